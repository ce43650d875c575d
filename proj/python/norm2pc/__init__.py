# Copyright 2026 The norm2pc Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#   http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Two-party secure computation of L1 / squared L2 / Linf norms.

Both parties run in-process over a local channel; `run` returns the
reconstructed output plus a cost report with measured communication,
round counts, and analytic bound checks.
"""

import json

from norm2pc import _core
from norm2pc._core import (
    ProtocolError,
    UnsupportedError,
    UsageError,
    oracle,
    predict,
    protocols,
    write_base_ot_files,
)

__all__ = [
    "ProtocolError",
    "UnsupportedError",
    "UsageError",
    "oracle",
    "predict",
    "protocols",
    "run",
    "write_base_ot_files",
]


def run(protocol, **kwargs):
    """Execute one protocol with both parties in-process.

    Returns a dict with `output` (list of ints, signed view) and `report`
    (parsed cost report dict).
    """
    res = _core.run(protocol, **kwargs)
    return {
        "output": res["output"],
        "report": json.loads(res["report_json"]),
    }
