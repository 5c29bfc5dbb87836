# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

import os
import json
from typing import Any, Dict, Optional, Callable

import numpy as np
from rich.console import Console
from rich.syntax import Syntax

LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()
MAX_CONTEXT_STRING = 300
console = Console(stderr=True)

LEVELS = {
    "STRACE": 0,
    "TRACE": 1,
    "DEBUG": 2,
    "OPTIM": 3,     # Per-step optimizer energies
    "INFO": 4,
    "ARTIFACT": 5,  # File reads and writes
    "WARNING": 6,
    "ERROR": 7,
    "EXCEPTION": 8,
}


class Logger:
    def __init__(self, level: Optional[str] = None):
        name = (level or LOG_LEVEL).upper()
        self.log_level = LEVELS.get(name, None)
        if self.log_level is None:
            raise ValueError(f"Invalid log level: {name}")
        # Optional callback: (level, msg, context)
        self.on_log: Optional[Callable[[str, str, Any], None]] = None

    def summarize(self, data: Any, max_length: int = MAX_CONTEXT_STRING) -> Any:
        """Reduce a context value to something printable as JSON."""
        try:
            if isinstance(data, np.ndarray):
                summary = {"shape": list(data.shape), "dtype": str(data.dtype)}
                if data.size and np.issubdtype(data.dtype, np.number):
                    summary["min"] = float(np.min(data))
                    summary["max"] = float(np.max(data))
                return summary
            if isinstance(data, np.generic):
                return data.item()
            if isinstance(data, dict):
                return {str(k): self.summarize(v, max_length) for k, v in data.items()}
            if isinstance(data, (list, tuple)):
                return [self.summarize(item, max_length) for item in data]
            if isinstance(data, str):
                if len(data) > max_length:
                    return data[:max_length] + "..."
                return data
            if isinstance(data, (bool, int, float)) or data is None:
                return data
            return self.summarize(str(data), max_length)
        except Exception:
            return "<SUMMARY ERROR>"

    def log_plain(self, level: str, msg: str, context: Any = None):
        context = self.summarize(context or {})
        console.print(f"[{level}] {self.summarize(msg)}", markup=False, highlight=False)
        if context:
            console.print(f"Context: {json.dumps(context, indent=2)}",
                          markup=False, highlight=False)

    def log_pretty(self, level: str, msg: str, context: Any = None):
        context = self.summarize(context or {})
        style = "dim" if level in ["DEBUG", "TRACE", "OPTIM"] else \
            "bold red" if level in ["EXCEPTION", "ERROR"] else \
            "yellow" if level == "WARNING" else "white"
        console.print(f"{self.summarize(msg)}", style=style, markup=False)
        if context:
            console.print(Syntax(json.dumps(context, indent=2), "json"), style="dim")

    def _log(self, level: str, msg: str, context: Optional[Dict] = None):
        context = context or {}
        entry_level = LEVELS.get(level.upper())
        if entry_level is None:
            console.print(f"[WARN] Unknown log level: {level}", markup=False)
            return

        # Always call the test/debug hook if set
        if self.on_log:
            self.on_log(level, msg, context)

        if entry_level < (self.log_level or 0):
            return

        if self.log_level == 0:
            self.log_plain(level, msg, context)
        else:
            self.log_pretty(level, msg, context)

    def set_level(self, level: str):
        value = LEVELS.get(level.upper())
        if value is None:
            raise ValueError(f"Invalid log level: {level}")
        self.log_level = value

    def info(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("INFO", msg, context)

    def warning(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("WARNING", msg, context)

    def error(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("ERROR", msg, context)

    def debug(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("DEBUG", msg, context)

    def trace(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("TRACE", msg, context)

    def strace(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("STRACE", msg, context)

    def exception(self, msg: str, context: Any = None, *args, **kwargs):
        self._log("EXCEPTION", msg, context)

    def optim(self, msg: str, context: Any = None, *args, **kwargs):
        """Log an optimizer step at OPTIM level."""
        self._log("OPTIM", msg, context)

    def artifact(self, msg: str, context: Any = None, *args, **kwargs):
        """Log a file read or write at ARTIFACT level."""
        self._log("ARTIFACT", msg, context)
