"""JSON workspaces: an algebra, named modules and adjoint contexts."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

from .algebra import PresentedAlgebra, path_algebra
from .exactla import Field
from .homology import DEFAULT_HORIZON
from .rep import RepError, Representation, direct_sum, indec_projective, simple


class WorkspaceError(ValueError):
    pass


class UnknownName(KeyError):
    pass


def builtin_algebra(name: str, field_: Field | None = None) -> PresentedAlgebra:
    """Small algebras used by the harness: ``a3``, ``a3-ba0``, ``d4`` (1->2, 1->3, 2->4, 3->4), ``k``."""
    F = field_ or Field.rationals()
    if name == "a3":
        return path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], length_bound=3, field_=F)
    if name == "a3-ba0":
        return path_algebra([1, 2, 3], [("a", 1, 2), ("b", 2, 3)], [[(1, ("b", "a"))]], 3, F)
    if name == "d4":
        return path_algebra([1, 2, 3, 4], [("a", 1, 2), ("b", 1, 3), ("c", 2, 4), ("d", 3, 4)],
                            length_bound=3, field_=F)
    if name == "k":
        return path_algebra([1], [], length_bound=1, field_=F)
    raise WorkspaceError(f"unknown builtin algebra {name!r}")


class Workspace:
    """Algebra plus named modules.

    Every vertex ``v`` automatically binds ``P<v>`` (indecomposable
    projective) and ``S<v>`` (simple).  Contexts map a name to the module
    used as ``U``.
    """

    def __init__(self, algebra: PresentedAlgebra, module_specs: dict | None = None,
                 context_specs: dict | None = None):
        self.algebra = algebra
        self.field = algebra.field
        self.module_specs = dict(module_specs or {})
        self.context_specs = dict(context_specs or {})
        self.modules: dict[str, Representation] = {}
        for v in algebra.quiver.vertices:
            self.modules[f"P{v}"] = indec_projective(algebra, v)
            self.modules[f"S{v}"] = simple(algebra, v)
        for name, spec in self.module_specs.items():
            if name in self.modules:
                raise WorkspaceError(f"module name {name!r} is already bound")
            self.modules[name] = self._build(name, spec)
        for name, spec in self.context_specs.items():
            target = spec["module"] if isinstance(spec, dict) else spec
            if target not in self.modules:
                raise WorkspaceError(f"context {name!r} refers to unknown module {target!r}")
        self._contexts: dict = {}

    def _build(self, name: str, spec) -> Representation:
        A = self.algebra
        try:
            if "sum" in spec:
                return direct_sum(A, [self.module(n) for n in spec["sum"]])
            if "projective" in spec:
                return indec_projective(A, str(spec["projective"]))
            if "simple" in spec:
                return simple(A, str(spec["simple"]))
            return Representation.from_json(A, spec)
        except UnknownName:
            raise
        except (RepError, ValueError, KeyError, TypeError) as exc:
            raise WorkspaceError(f"module {name!r}: {exc}") from exc

    def module(self, name: str) -> Representation:
        try:
            return self.modules[name]
        except KeyError:
            raise UnknownName(name) from None

    def context(self, name: str, horizon: int = DEFAULT_HORIZON):
        from .gorenstein import AdjointContext

        if name not in self.context_specs:
            raise UnknownName(name)
        key = (name, horizon)
        if key not in self._contexts:
            spec = self.context_specs[name]
            target = spec["module"] if isinstance(spec, dict) else spec
            self._contexts[key] = AdjointContext(self.module(target), horizon)
        return self._contexts[key]

    def with_field(self, field_: Field) -> Workspace:
        if field_ == self.field:
            return self
        return Workspace(self.algebra.with_field(field_), self.module_specs, self.context_specs)

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra.to_json(),
            "modules": self.module_specs,
            "contexts": self.context_specs,
        }

    @classmethod
    def from_json(cls, data: dict, field_: Field | None = None) -> Workspace:
        try:
            alg = data["algebra"]
            if isinstance(alg, str):
                algebra = builtin_algebra(alg, field_ or Field.from_spec(data.get("field", "q")))
            else:
                algebra = PresentedAlgebra.from_json(alg, field_)
        except (KeyError, TypeError, ValueError) as exc:
            raise WorkspaceError(f"bad algebra: {exc}") from exc
        return cls(algebra, data.get("modules", {}), data.get("contexts", {}))


def load_workspace(path: str | Path | None = None, field_: Field | None = None) -> Workspace:
    """Load a workspace file; ``None`` loads the bundled A3 tilting example."""
    try:
        if path is None:
            text = resources.files("homdim").joinpath("data/a3-tilting.json").read_text()
        else:
            text = Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise WorkspaceError(f"cannot read workspace: {exc}") from exc
    return Workspace.from_json(data, field_)
