# Copyright 2026 The edcrir Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Room decay curves: simulation, prediction and RIR reconstruction."""

try:
    from ._edcrir import *  # noqa: F401,F403  installed wheel
    from ._edcrir import __version__
except ImportError:
    # In-tree build: the extension sits next to the build directory.
    from _edcrir import *  # noqa: F401,F403
    from _edcrir import __version__

GRID_RATE = 480.0
GRID_LENGTH = 1440
SAMPLE_RATE = 48000.0
