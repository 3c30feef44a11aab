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

import logging
import types
import typing
from collections.abc import Callable, Iterable
from dataclasses import MISSING, fields, is_dataclass
from inspect import Parameter, getmembers, signature

from isfe import _estimator, _generators
from isfe._annotations import SpecKind, SpecWrapper
from isfe._estimator import Partitioner
from isfe._graphon import Graphon
from isfe.errors import (
    ParameterNotAnnotatedError,
    SpecArgumentError,
    SpecArityError,
    SpecNameExistsError,
    UnknownSpecNameError,
)

type _SpecCtor = Callable[..., typing.Any]

_POSITIONAL = (Parameter.POSITIONAL_ONLY, Parameter.POSITIONAL_OR_KEYWORD)


class SpecRegistry[T]:
    """Resolve ``name:arg,arg`` strings to objects built by marked constructors."""

    _logger: logging.Logger
    _kind: SpecKind
    _name_to_ctor: dict[str, _SpecCtor]

    def __init__(self, kind: SpecKind) -> None:
        self._logger = logging.getLogger(self.__class__.__name__)
        self._kind = kind
        self._name_to_ctor = {}

    @property
    def names(self) -> list[str]:
        return sorted(self._name_to_ctor)

    def scan(self, modules: Iterable[types.ModuleType]) -> typing.Self:
        for module in modules:
            for name, member in getmembers(module, callable):
                if name.startswith("_"):
                    continue

                option = SpecWrapper.get_spec_option(member)
                if option is None or option.kind != self._kind:
                    continue

                _ = self.register(option.name, member)

        return self

    def register(self, name: str, ctor: _SpecCtor) -> typing.Self:
        existing = self._name_to_ctor.get(name)

        if existing is None:
            self._name_to_ctor[name] = ctor
            self._logger.debug("Registered %s `%s` -> %s", self._kind, name, ctor)

        elif existing is not ctor:
            raise SpecNameExistsError(self._kind, name)

        return self

    def parse(self, spec: str, **context: typing.Any) -> T:
        name, _, raw = spec.strip().partition(":")

        ctor = self._name_to_ctor.get(name)
        if ctor is None:
            raise UnknownSpecNameError(self._kind, name, self.names)

        params = list(signature(ctor, eval_str=True).parameters.values())
        positional = [p for p in params if p.kind in _POSITIONAL]
        keyword = {
            p.name: context[p.name]
            for p in params
            if p.kind is Parameter.KEYWORD_ONLY and p.name in context
        }

        if len(positional) == 1 and is_dataclass(positional[0].annotation):
            spec_type = typing.cast(type[typing.Any], positional[0].annotation)
            args = [self._build_dataclass(spec, spec_type, _split(raw))]

        elif len(positional) == 1:
            # a lone argument is taken verbatim, so paths may contain commas
            args = self._coerce_params(spec, ctor, positional, [raw] if raw else [])

        else:
            args = self._coerce_params(spec, ctor, positional, _split(raw))

        obj = ctor(*args, **keyword)

        self._logger.debug("Built %s from `%s`", obj, spec)

        return typing.cast(T, obj)

    def _build_dataclass(
        self,
        spec: str,
        spec_type: type[typing.Any],
        raw_args: list[str],
    ) -> typing.Any:
        annotations = typing.get_type_hints(spec_type)
        init_fields = [f for f in fields(spec_type) if f.init]
        required = sum(
            1 for f in init_fields if f.default is MISSING and f.default_factory is MISSING
        )

        if not (required <= len(raw_args) <= len(init_fields)):
            raise SpecArityError(spec, len(raw_args), required, len(init_fields))

        kwargs = {
            f.name: _coerce(spec, f.name, raw, annotations[f.name])
            for f, raw in zip(init_fields, raw_args, strict=False)
        }

        return spec_type(**kwargs)

    @staticmethod
    def _coerce_params(
        spec: str,
        ctor: _SpecCtor,
        params: list[Parameter],
        raw_args: list[str],
    ) -> list[typing.Any]:
        required = sum(1 for p in params if p.default is Parameter.empty)

        if not (required <= len(raw_args) <= len(params)):
            raise SpecArityError(spec, len(raw_args), required, len(params))

        args: list[typing.Any] = []
        for p, raw in zip(params, raw_args, strict=False):
            if p.annotation is Parameter.empty:
                raise ParameterNotAnnotatedError(ctor, p)

            args.append(_coerce(spec, p.name, raw, p.annotation))

        return args


def _split(raw: str) -> list[str]:
    return [a.strip() for a in raw.split(",")] if raw.strip() else []


def _coerce(spec: str, name: str, raw: str, annotation: typing.Any) -> typing.Any:
    if not isinstance(annotation, type) or annotation is bool:
        raise SpecArgumentError(spec, name, raw, annotation)

    try:
        return annotation(raw)

    except (TypeError, ValueError) as e:
        raise SpecArgumentError(spec, name, raw, annotation.__name__) from e


def graphon_registry() -> SpecRegistry[Graphon]:
    registry: SpecRegistry[Graphon] = SpecRegistry("graphon")
    return registry.scan([_generators])


def partitioner_registry() -> SpecRegistry[Partitioner]:
    registry: SpecRegistry[Partitioner] = SpecRegistry("init")
    return registry.scan([_estimator])
