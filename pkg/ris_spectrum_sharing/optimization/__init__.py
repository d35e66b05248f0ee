#!/usr/bin/env python3
"""
RIS Spectrum Sharing Workbench - Multi-VSP Spectrum Sharing with Reconfigurable Intelligent Surfaces
Copyright (c) 2025 RIS Spectrum Sharing Project

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
"""

"""
Kıyas çözücüsü: ayrık arama ve SCA güç iyileştirmesi
"""

from .enumeration import MAX_CANDIDATES, candidate_count, check_search_space, enumerate_discrete
from .sca import ScaResult, sca_refine
from .eds import BenchmarkRecord, eds_solve, eds_solve_detailed, brute_force_oracle

__all__ = [
    "MAX_CANDIDATES",
    "candidate_count",
    "check_search_space",
    "enumerate_discrete",
    "ScaResult",
    "sca_refine",
    "BenchmarkRecord",
    "eds_solve",
    "eds_solve_detailed",
    "brute_force_oracle"
]
