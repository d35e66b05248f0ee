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
RIS Spectrum Sharing Workbench - Logging System
===============================================

Kategorili logging ve oturum istatistikleri.
"""

import json
import logging
import sys
import traceback
from datetime import datetime
from enum import Enum
from pathlib import Path
from typing import Any, Dict, Optional

try:
    from rich.console import Console
    from rich.logging import RichHandler
    RICH_AVAILABLE = True
except ImportError:
    RICH_AVAILABLE = False


class LogLevel(Enum):
    """Log seviyeleri"""
    DEBUG = "DEBUG"
    INFO = "INFO"
    WARNING = "WARNING"
    ERROR = "ERROR"
    CRITICAL = "CRITICAL"


class LogCategory(Enum):
    """Log kategorileri"""
    SCENARIO = "SCENARIO"
    CHANNEL = "CHANNEL"
    ENVIRONMENT = "ENVIRONMENT"
    TRAINING = "TRAINING"
    BENCHMARK = "BENCHMARK"
    HARNESS = "HARNESS"
    VISUALIZATION = "VISUALIZATION"
    SYSTEM = "SYSTEM"


class WorkbenchLogger:
    """
    Workbench için özelleştirilmiş logger
    """

    def __init__(self, name: str = "RisSpectrumSharing", log_dir: Optional[str] = None,
                 console: bool = True):
        """
        Logger'ı initialize eder

        Args:
            name: Logger adı
            log_dir: Log dosyalarının saklanacağı dizin (None: sadece konsol)
            console: Konsol handler'ı eklensin mi
        """
        self.name = name
        self.log_dir = Path(log_dir) if log_dir else None
        if self.log_dir is not None:
            self.log_dir.mkdir(parents=True, exist_ok=True)

        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False

        self.formatter = logging.Formatter(
            '%(asctime)s | %(levelname)-8s | %(name)s | %(message)s',
            datefmt='%Y-%m-%d %H:%M:%S'
        )

        self._setup_handlers(console)

        self.session_id = datetime.now().strftime("%Y%m%d_%H%M%S")
        self.session_start = datetime.now()

        self.stats = {
            "total_logs": 0,
            "errors": 0,
            "warnings": 0,
            "training_runs": 0,
            "benchmarks": 0
        }

        self.debug("Workbench logger initialized", LogCategory.SYSTEM)

    def _setup_handlers(self, console: bool):
        """Handler'ları setup eder"""
        # Tekrar kurulumda handler'lar çoğalmasın
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        if console:
            if RICH_AVAILABLE:
                console_handler = RichHandler(console=Console(stderr=True), show_path=False,
                                              rich_tracebacks=False)
                console_handler.setFormatter(logging.Formatter('%(message)s'))
            else:
                console_handler = logging.StreamHandler(sys.stderr)
                console_handler.setFormatter(self.formatter)
            console_handler.setLevel(logging.INFO)
            self.logger.addHandler(console_handler)

        if self.log_dir is None:
            return

        general_log = self.log_dir / f"workbench_{datetime.now().strftime('%Y%m%d')}.log"
        file_handler = logging.FileHandler(general_log)
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(self.formatter)
        self.logger.addHandler(file_handler)

        error_log = self.log_dir / f"errors_{datetime.now().strftime('%Y%m%d')}.log"
        error_handler = logging.FileHandler(error_log)
        error_handler.setLevel(logging.ERROR)
        error_handler.setFormatter(self.formatter)
        self.logger.addHandler(error_handler)

    def set_level(self, log_level: str):
        """Konsol handler'larının seviyesini ayarlar"""
        level = getattr(logging, log_level.upper(), None)
        if not isinstance(level, int):
            raise ValueError(f"Bilinmeyen log seviyesi: {log_level}")
        for handler in self.logger.handlers:
            if not isinstance(handler, logging.FileHandler):
                handler.setLevel(level)

    def _log(self, level: LogLevel, message: str, category: LogCategory = LogCategory.SYSTEM,
             extra_data: Optional[Dict[str, Any]] = None):
        """
        Internal log metodu

        Args:
            level: Log seviyesi
            message: Log mesajı
            category: Log kategorisi
            extra_data: Ek veri
        """
        self.stats["total_logs"] += 1
        if level == LogLevel.ERROR:
            self.stats["errors"] += 1
        elif level == LogLevel.WARNING:
            self.stats["warnings"] += 1

        formatted_message = f"[{category.value}] {message}"
        if extra_data:
            formatted_message += f" | Data: {json.dumps(extra_data, default=str)}"

        self.logger.log(getattr(logging, level.value), formatted_message)

    def debug(self, message: str, category: LogCategory = LogCategory.SYSTEM,
              extra_data: Optional[Dict[str, Any]] = None):
        """Debug log"""
        self._log(LogLevel.DEBUG, message, category, extra_data)

    def info(self, message: str, category: LogCategory = LogCategory.SYSTEM,
             extra_data: Optional[Dict[str, Any]] = None):
        """Info log"""
        self._log(LogLevel.INFO, message, category, extra_data)

    def warning(self, message: str, category: LogCategory = LogCategory.SYSTEM,
                extra_data: Optional[Dict[str, Any]] = None):
        """Warning log"""
        self._log(LogLevel.WARNING, message, category, extra_data)

    def error(self, message: str, category: LogCategory = LogCategory.SYSTEM,
              extra_data: Optional[Dict[str, Any]] = None, exception: Optional[Exception] = None):
        """Error log"""
        if exception:
            extra_data = dict(extra_data or {})
            extra_data["exception"] = str(exception)
            extra_data["traceback"] = traceback.format_exc()
        self._log(LogLevel.ERROR, message, category, extra_data)

    def log_scenario_built(self, summary: Dict[str, Any]):
        """Senaryo kurulumunu log'lar"""
        self.info(f"📡 Scenario built: {summary.get('vsps')} VSPs, {summary.get('users')} users, "
                  f"{summary.get('ris')} RIS", LogCategory.SCENARIO, summary)

    def log_run_start(self, agent_kind: str, seed: int, total_steps: int):
        """Eğitim koşusunun başlangıcını log'lar"""
        self.stats["training_runs"] += 1
        self.info(f"🚀 Training started: {agent_kind} (seed {seed}, {total_steps} steps)",
                  LogCategory.TRAINING,
                  {"agent": agent_kind, "seed": seed, "total_steps": total_steps})

    def log_run_end(self, agent_kind: str, seed: int, execution_time: float, final_reward: float):
        """Eğitim koşusunun sonunu log'lar"""
        self.info(f"✅ Training completed: {agent_kind} seed {seed} ({execution_time:.1f}s, "
                  f"final smoothed reward {final_reward:.4f})",
                  LogCategory.TRAINING,
                  {"agent": agent_kind, "seed": seed, "execution_time": execution_time,
                   "final_reward": final_reward})

    def log_benchmark_result(self, seed: int, stage1_reward: float, stage2_reward: float,
                             iterations: int):
        """Benchmark sonucunu log'lar"""
        self.stats["benchmarks"] += 1
        self.info(f"📐 Benchmark seed {seed}: stage-1 {stage1_reward:.4f} -> "
                  f"stage-2 {stage2_reward:.4f} ({iterations} SCA iterations)",
                  LogCategory.BENCHMARK,
                  {"seed": seed, "stage1_reward": stage1_reward,
                   "stage2_reward": stage2_reward, "iterations": iterations})

    def log_sweep_point(self, axis: str, value: Any, agent_kind: str):
        """Sweep noktasını log'lar"""
        self.info(f"🔁 Sweep {axis}={value} ({agent_kind})", LogCategory.HARNESS,
                  {"axis": axis, "value": value, "agent": agent_kind})

    def log_artifact(self, kind: str, path: str):
        """Yazılan çıktı dosyasını log'lar"""
        self.info(f"💾 {kind} written: {path}", LogCategory.HARNESS, {"kind": kind, "path": path})

    def get_session_stats(self) -> Dict[str, Any]:
        """Session istatistiklerini döndürür"""
        session_duration = (datetime.now() - self.session_start).total_seconds()

        return {
            "session_id": self.session_id,
            "session_start": self.session_start.isoformat(),
            "session_duration_seconds": session_duration,
            "statistics": self.stats.copy()
        }

    def export_logs(self, output_file: Optional[str] = None) -> str:
        """Log özetini JSON olarak export eder"""
        if not output_file:
            output_file = f"workbench_logs_export_{self.session_id}.json"

        log_files = [str(f) for f in sorted(self.log_dir.glob("*.log"))] if self.log_dir else []
        export_data = {
            "export_timestamp": datetime.now().isoformat(),
            "session_info": self.get_session_stats(),
            "log_files": log_files
        }

        with open(output_file, 'w') as f:
            json.dump(export_data, f, indent=2)

        self.info(f"📤 Logs exported to {output_file}", LogCategory.SYSTEM)
        return output_file


_global_logger: Optional[WorkbenchLogger] = None


def get_logger() -> WorkbenchLogger:
    """Global logger instance'ını döndürür"""
    global _global_logger
    if _global_logger is None:
        _global_logger = WorkbenchLogger()
    return _global_logger


def setup_logging(log_dir: Optional[str] = None, log_level: str = "INFO",
                  console: bool = True) -> WorkbenchLogger:
    """Logging sistemini setup eder"""
    global _global_logger
    _global_logger = WorkbenchLogger(log_dir=log_dir, console=console)
    _global_logger.set_level(log_level)
    return _global_logger

