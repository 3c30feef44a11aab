# Copyright 2025 iyanging
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

from collections.abc import Callable
from inspect import Parameter
from pathlib import Path
from typing import Any


class IsfeError(Exception): ...


class InvalidInputError(IsfeError, ValueError): ...


class VertexOutOfRangeError(InvalidInputError):
    def __init__(self, vertex: int, n: int) -> None:
        super().__init__(f"Vertex {vertex} is out of range for a graph on {n} vertices")


class EmptyVertexSetError(InvalidInputError):
    def __init__(self, name: str) -> None:
        super().__init__(f"Vertex set `{name}` must be nonempty")


class DimensionMismatchError(InvalidInputError):
    def __init__(self, what: str, left: Any, right: Any) -> None:
        super().__init__(f"Dimension mismatch in {what}: {left} vs {right}")


class InvalidGraphError(InvalidInputError):
    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid graph: {reason}")


class InvalidPartitionError(InvalidInputError):
    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid partition: {reason}")


class InvalidWeightedGraphError(InvalidInputError):
    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid weighted graph: {reason}")


class InvalidStepGraphonError(InvalidInputError):
    def __init__(self, reason: str) -> None:
        super().__init__(f"Invalid step graphon: {reason}")


class CoordinateOutOfRangeError(InvalidInputError):
    def __init__(self, x: float, y: float) -> None:
        super().__init__(f"Graphon coordinates ({x}, {y}) must lie in [0, 1]")


class ParameterRangeError(InvalidInputError):
    def __init__(self, name: str, value: Any, expected: str) -> None:
        super().__init__(f"Parameter `{name}` = {value!r} must be {expected}")


class DomainError(IsfeError, ValueError):
    def __init__(self, formula: str, reason: str) -> None:
        super().__init__(f"`{formula}` is undefined: {reason}")


class SizeGuardError(InvalidInputError):
    def __init__(self, what: str, size: int, limit: int) -> None:
        super().__init__(
            f"Exact {what} refuses input of size {size}; the exhaustive search is limited to "
            f"size {limit}"
        )


class SpecParseError(IsfeError): ...


class UnknownSpecNameError(SpecParseError):
    def __init__(self, kind: str, name: str, known: Any) -> None:
        super().__init__(f"Unknown {kind} `{name}`, expected one of {known}")


class SpecArityError(SpecParseError):
    def __init__(self, spec: str, given: int, low: int, high: int) -> None:
        expected = str(low) if low == high else f"{low}..{high}"
        super().__init__(f"Spec `{spec}` has {given} argument(s), expected {expected}")


class SpecArgumentError(SpecParseError):
    def __init__(self, spec: str, name: str, raw: str, annotation: Any) -> None:
        super().__init__(
            f"Argument `{name}` = {raw!r} of spec `{spec}` cannot be read as {annotation}"
        )


class ParameterNotAnnotatedError(SpecParseError):
    def __init__(self, func: Callable[..., Any], param: Parameter) -> None:
        super().__init__(f"Parameter `{param.name}` of constructor `{func}` is not annotated")


class SpecNameExistsError(SpecParseError):
    def __init__(self, kind: str, name: str) -> None:
        super().__init__(f"A {kind} named `{name}` has already been registered")


class ConfigParseError(SpecParseError):
    def __init__(self, source: str, line_no: int, reason: str) -> None:
        super().__init__(f"{source}:{line_no}: {reason}")


class EdgeListParseError(IsfeError):
    def __init__(self, path: Path, line_no: int, line: str) -> None:
        super().__init__(
            f"{path}:{line_no}: expected two nonnegative integer vertex ids, got {line!r}"
        )


class EmptyGraphFileError(IsfeError):
    def __init__(self, path: Path) -> None:
        super().__init__(f"{path} does not contain any edge")
