# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from .main import build_parser, format_error, main, run

__all__ = ["build_parser", "format_error", "main", "run"]
