# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
garmentex: UV texture recovery for fixed-topology garment templates from
front/back catalog images.
"""

from .logger import Logger

__version__ = "0.1.0"

GLOBAL_LOGGER = Logger()


def get_logger() -> Logger:
    return GLOBAL_LOGGER


__all__ = ["Logger", "GLOBAL_LOGGER", "get_logger", "__version__"]
