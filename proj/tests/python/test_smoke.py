# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import os
import pathlib

import pytest

import agora

SOURCE_DIR = pathlib.Path(os.environ.get("AGORA_SOURCE_DIR", pathlib.Path(__file__).resolve().parents[2]))
GEO_DIR = SOURCE_DIR / "data" / "tpch_geo"


def test_sha256_known_vector():
    assert agora.sha256_hex(b"abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"


def test_split_payment_conserves_gross():
    tree = {
        "beneficiary": "alice",
        "children": [
            {"beneficiary": "bob", "share": "1/3"},
            {"beneficiary": "carol", "share": "2/3"},
        ],
    }
    parts = agora.split_payment(1_000_001, tree)
    assert sum(amount for _, amount in parts) == 1_000_001
    assert {who for who, _ in parts} <= {"alice", "bob", "carol"}


def test_split_payment_rejects_bad_shares():
    tree = {
        "beneficiary": "alice",
        "children": [
            {"beneficiary": "bob", "share": "1/2"},
            {"beneficiary": "carol", "share": "1/3"},
        ],
    }
    with pytest.raises(agora.AgoraError):
        agora.split_payment(100, tree)


def test_compliant_plan_avoids_denied_ship():
    sql = (GEO_DIR / "q10.sql").read_text()
    costs = {("NA", "EU"): 0.0001, ("EU", "NA"): 0.01}
    compliant = agora.plan_query(sql, costs)
    assert compliant is not None
    assert compliant["compliant"]
    assert "SHIP NA->EU" not in compliant["plan"]
    free = agora.plan_query(sql, costs, ignore_policies=True)
    assert not free["compliant"]
    assert free["cost"] <= compliant["cost"]


def test_plan_query_reports_syntax_errors():
    with pytest.raises(agora.AgoraError):
        agora.plan_query("SELECT FROM orders;")


def test_escrow_session_round_trip():
    payload = bytes(range(256)) * 64
    result = agora.escrow_session(payload, seed=7, drop_rate=0.2, dup_rate=0.1, chunk_bytes=1024)
    assert result["completed"]
    assert result["received"] == payload
    assert result["chunks"] == 16


def test_escrow_session_aborts_on_tamper():
    payload = bytes(4096 * 4)
    result = agora.escrow_session(payload, seed=3, tamper_chunk=1)
    assert not result["completed"]
    assert result["received"] != payload


def test_run_command_matches_cli_contract():
    code, out, err = agora.run_command(["--config", str(GEO_DIR / "config.json"), "plan", "--sql", str(GEO_DIR / "q10.sql")])
    assert code == 0
    assert out.endswith("compliant=C\n")
    code, out, err = agora.run_command(["no-such-command"])
    assert code == 2
    assert out == ""
    assert err
