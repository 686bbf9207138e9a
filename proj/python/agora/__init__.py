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

"""Python bindings for the agora data marketplace core."""

from agora._core import (
    AgoraError,
    escrow_session,
    plan_query,
    run_command,
    sha256_hex,
    split_payment,
)

__all__ = [
    "AgoraError",
    "escrow_session",
    "plan_query",
    "run_command",
    "sha256_hex",
    "split_payment",
]
