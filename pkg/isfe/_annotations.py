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

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from typing import Any, ClassVar, Final, Literal, overload

SpecKind = Literal["graphon", "init"]


def spec_constructor(*, kind: SpecKind, name: str) -> SpecWrapper:
    """Mark a callable as buildable from a ``name:arg,arg`` spec string.

    Positional spec arguments are coerced to the annotated parameter types; a single
    dataclass-typed parameter is filled field by field.
    """
    return SpecWrapper(option=SpecOption(kind=kind, name=name))


@dataclass(kw_only=True, repr=True, frozen=True)
class SpecOption:
    kind: SpecKind
    name: str


@dataclass(kw_only=True)
class SpecWrapper:
    """Provide precise __call__() overload definition."""

    _SPEC_OPTION_KEY: ClassVar[Final[str]] = "__spec_option__"

    option: Final[SpecOption]

    @overload
    def __call__[T](self, ctor: type[T]) -> type[T]: ...

    @overload
    def __call__[**P, R](
        self,
        ctor: Callable[P, R],
    ) -> Callable[P, R]: ...

    def __call__[T, **P, R](
        self,
        ctor: type[T] | Callable[P, R],
    ) -> type[T] | Callable[P, R]:
        setattr(ctor, self._SPEC_OPTION_KEY, self.option)
        return ctor

    @classmethod
    def get_spec_option(
        cls,
        ctor: Callable[..., Any],
    ) -> SpecOption | None:
        # only look at the callable itself, a subclass must be marked on its own
        option = vars(ctor).get(cls._SPEC_OPTION_KEY) if hasattr(ctor, "__dict__") else None
        return option if isinstance(option, SpecOption) else None
