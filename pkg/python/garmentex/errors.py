# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

"""
Exception hierarchy for garmentex.

Every error carries the process exit code the CLI reports for it:
2 bad invocation, 3 bad input file, 4 numerical failure.
"""

from typing import List, Optional


class GarmentexError(Exception):
    """Base exception for all garmentex failures."""
    exit_code = 1


class InvocationError(GarmentexError):
    """Bad command line, unknown config key or unknown template name."""
    exit_code = 2


class InputError(GarmentexError):
    """An input file or in-memory input is malformed."""
    exit_code = 3


class MissingInputError(InputError):
    """A required file or view is absent."""
    pass


class ShapeMismatchError(InputError, ValueError):
    """Two inputs that must agree in size do not."""
    pass


class MeshError(InputError):
    """Mesh topology or UV data violates a TemplateMesh invariant."""
    pass


class ObjParseError(MeshError):
    """Malformed OBJ record."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class LandmarkError(InputError):
    """Landmark names or indices do not resolve against the template."""
    pass


class ImageFormatError(InputError):
    """Image has an unsupported shape, channel count or size."""
    pass


class ConfigError(InputError):
    """Configuration file cannot be parsed or validated."""
    pass


class DatasetError(InputError):
    """Simulated dataset on disk is missing pieces or empty."""
    pass


class NumericalError(GarmentexError):
    """A numerical routine cannot produce a valid result."""
    exit_code = 4


class DegenerateFaceError(NumericalError):
    """A face has zero area, so its normal is undefined."""

    def __init__(self, face_index: int, message: Optional[str] = None):
        self.face_index = int(face_index)
        super().__init__(message or f"degenerate face {self.face_index}")


class DivergenceError(NumericalError):
    """Optimization produced a non-finite energy."""

    def __init__(self, message: str, trace: Optional[List[float]] = None):
        self.trace = list(trace or [])
        super().__init__(message)


class SingularSystemError(NumericalError):
    """Linear system is singular (collinear or duplicate controls)."""
    pass


class DomainError(NumericalError):
    """A texel mask escapes the UV domain, or the domain is empty."""
    pass


class ParameterError(InputError, ValueError):
    """A numeric parameter is outside its documented range."""
    pass
