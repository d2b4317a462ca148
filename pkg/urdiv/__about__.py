# Copyright 2026 The urdiv developers
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Library meta information.

This module must be stand-alone executable.
"""

__title__ = "urdiv"
__version__ = "0.1.0"
__author__ = "The urdiv developers"
__email__ = "urdiv-dev@users.noreply.github.com"
__summary__ = ("Ultra-reliability statistics of uncorrelated multi-antenna "
               "Rician fading channels")
__uri__ = "https://github.com/urdiv/urdiv"
__license__ = "Apache License, Version 2.0"
__copyright__ = "2026 {}".format(__author__)
