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
Hata Sınıfları
==============

Workbench genelinde kullanılan hata tipleri. Hepsi WorkbenchError'dan türer ve
ayrıca uygun yerleşik tipi (ValueError / RuntimeError) miras alır.
"""

from typing import Iterable, Optional


class WorkbenchError(Exception):
    """Tüm workbench hatalarının temel sınıfı"""


class InvalidConfig(WorkbenchError, ValueError):
    """Konfigürasyon alanı geçersiz"""

    def __init__(self, field: str, reason: str, source: Optional[str] = None):
        self.field = field
        self.reason = reason
        self.source = source
        prefix = f"{source}: " if source else ""
        super().__init__(f"{prefix}{field}: {reason}")

    def with_source(self, source: str) -> "InvalidConfig":
        """Aynı hatayı dosya bilgisiyle yeniden üretir"""
        error = InvalidConfig(self.field, self.reason, source)
        error.__cause__ = self
        return error


class OverlappingSets(InvalidConfig):
    """Yeniden kullanılabilir ve tahsisli alt kanal kümeleri kesişiyor"""

    def __init__(self, overlap: Iterable[int]):
        self.overlap = sorted(int(c) for c in overlap)
        super().__init__("reusable/dedicated", f"subchannels {self.overlap} appear in both sets")


class DegenerateGeometry(WorkbenchError, ValueError):
    """Bir bağlantının iki ucu aynı noktada"""


class NoRis(WorkbenchError, ValueError):
    """Kullanıcının ilişkilendirilmiş bir RIS'i yok"""


class DimensionMismatch(WorkbenchError, ValueError):
    """Girdi boyutu beklenen boyutla uyuşmuyor"""


class NotReset(WorkbenchError, RuntimeError):
    """Ortam reset edilmeden step çağrıldı"""


class InsufficientBuffer(WorkbenchError, RuntimeError):
    """Replay buffer'da yeterli geçiş yok"""

    def __init__(self, size: int, batch_size: int):
        self.size = size
        self.batch_size = batch_size
        super().__init__(f"replay buffer holds {size} transitions, batch of {batch_size} requested")


class SearchSpaceTooLarge(WorkbenchError, ValueError):
    """Kapsamlı arama uzayı sınırı aşıyor"""

    def __init__(self, count: int, limit: int, what: str = "candidate configurations"):
        self.count = int(count)
        self.limit = int(limit)
        super().__init__(f"{self.count} {what} exceed the limit of {self.limit}")


class InfeasibleQoS(WorkbenchError, RuntimeError):
    """QoS eşikleri tam güçte bile sağlanamıyor"""

    def __init__(self, users: Iterable[tuple], objective: float):
        self.users = list(users)
        self.objective = objective
        super().__init__(
            f"QoS threshold unreachable for users {self.users} (objective {objective:.6g})"
        )


class SchemaMismatch(WorkbenchError, ValueError):
    """Metrik dosyası beklenen kolonları içermiyor"""

    def __init__(self, path: str, missing: Iterable[str]):
        self.path = str(path)
        self.missing = list(missing)
        super().__init__(f"{self.path}: missing columns {self.missing}")


class EmptyInput(WorkbenchError, ValueError):
    """Çizilecek veri yok"""
