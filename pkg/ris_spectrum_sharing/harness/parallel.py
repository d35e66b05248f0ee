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
Parallel Modülü
===============

Tohumlar, sweep noktaları ve EDS parçaları için süreç havuzu. Sonuçlar gönderim
sırasıyla döner; indirgemeler deterministiktir.
"""

import concurrent.futures
import multiprocessing
import time
from typing import Any, Callable, Iterable, List, Optional

from tqdm import tqdm

from ..utils.logger import LogCategory, get_logger


class ParallelRunner:
    """
    Bağımsız işleri paralel çalıştıran sınıf

    jobs <= 1 iken işler aynı süreçte sırayla çalışır.
    """

    def __init__(self, jobs: Optional[int] = 1, progress_bar: bool = False, description: str = "runs"):
        """
        Args:
            jobs: İşlem sayısı (None: çekirdek sayısı)
            progress_bar: tqdm ilerleme çubuğu gösterilsin mi
            description: İlerleme çubuğu etiketi
        """
        self.jobs = multiprocessing.cpu_count() if jobs is None else max(1, int(jobs))
        self.progress_bar = progress_bar
        self.description = description
        self.stats = {
            "batches": 0,
            "tasks": 0,
            "elapsed_seconds": 0.0
        }

    def map(self, function: Callable[[Any], Any], tasks: Iterable[Any]) -> List[Any]:
        """
        Fonksiyonu her göreve uygular

        Args:
            function: Modül düzeyinde (picklable) fonksiyon
            tasks: Görev argümanları

        Returns:
            list: Gönderim sırasıyla sonuçlar
        """
        tasks = list(tasks)
        start_time = time.time()
        workers = min(self.jobs, len(tasks))

        if workers <= 1:
            iterator = map(function, tasks)
            if self.progress_bar:
                iterator = tqdm(iterator, total=len(tasks), desc=self.description)
            results = list(iterator)
        else:
            get_logger().debug(f"Parallel execution of {len(tasks)} tasks on {workers} processes",
                               LogCategory.HARNESS)
            with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as executor:
                iterator = executor.map(function, tasks)
                if self.progress_bar:
                    iterator = tqdm(iterator, total=len(tasks), desc=self.description)
                results = list(iterator)

        self.stats["batches"] += 1
        self.stats["tasks"] += len(tasks)
        self.stats["elapsed_seconds"] += time.time() - start_time
        return results
