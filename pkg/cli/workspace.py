"""
Algebras and modules built from a parsed document, on first use.
"""

import logging
from functools import reduce
from typing import Dict, Optional

from algebras.algebra import Algebra, Relation, build_algebra, opposite, tensor_algebra
from algebras.quiver import Quiver
from cli.parser import AlgebraDecl, InputDocument, ModuleDecl, factor_base, split_factors
from common import get_settings
from common.errors import AlgebraMismatch, ResolutionError
from linalg.field import Field
from reps.rep import Rep, projective, regular_module, rep_from_rows, semisimple_top, simple
from reps.tensor import regular_bimodule
from semtl.data import SemtlData

logger = logging.getLogger(__name__)


class Workspace:
    """
    Named objects of one document over its field.

    Algebra expressions are resolved through tensor_algebra and opposite, so
    the same expression always gives the same Algebra object.
    """

    def __init__(self, document: InputDocument, field: Optional[Field] = None):
        self.document = document
        if field is None:
            field = Field.parse(document.field_name or get_settings().field)
        self.field = field
        self._algebras: Dict[str, Algebra] = {}
        self._modules: Dict[str, Rep] = {}

    # algebras

    def _build_algebra(self, decl: AlgebraDecl) -> Algebra:
        quiver = Quiver(decl.vertices, decl.arrows)
        relations = [
            Relation.from_names(quiver, self.field, [(coeff, list(reversed(path))) for coeff, path in terms])
            for terms in decl.relations
        ]
        algebra = build_algebra(quiver, relations, self.field, name=decl.name)
        logger.info(f"Built {algebra}")
        return algebra

    def declared(self, name: str) -> Algebra:
        if name not in self._algebras:
            if name not in self.document.algebras:
                raise ResolutionError(name, 'algebra')
            self._algebras[name] = self._build_algebra(self.document.algebras[name])
        return self._algebras[name]

    def algebra(self, expression: str) -> Algebra:
        """The algebra of an expression such as 'Λ⊗Σop'."""
        factors = []
        for factor in split_factors(expression):
            base, op = factor_base(factor, self.document.algebras)
            algebra = self.declared(base)
            factors.append(opposite(algebra) if op else algebra)
        return reduce(tensor_algebra, factors)

    # modules

    def _build_module(self, decl: ModuleDecl) -> Rep:
        a = self.algebra(decl.over)
        if decl.constructor is not None:
            kind, args = decl.constructor
            if kind == 'simple':
                return simple(a, self._vertex(a, args[0], decl), name=decl.name)
            if kind == 'projective':
                return projective(a, self._vertex(a, args[0], decl))
            if kind == 'regular':
                return regular_module(a)
            if kind == 'top':
                return semisimple_top(a)
            bimodule = regular_bimodule(self.algebra(args[0]))
            if bimodule.algebra is not a:
                raise AlgebraMismatch(f"{args[0]} as a bimodule is over {bimodule.algebra.name}, not {a.name}")
            return bimodule
        known = {arrow.name for arrow in a.quiver.arrows}
        for arrow in decl.maps:
            if arrow not in known:
                raise ResolutionError(arrow, 'arrow', decl.line, decl.column)
        if len(decl.dims) != a.vertex_count:
            raise ValueError(f"Module {decl.name} has {len(decl.dims)} dims for {a.vertex_count} vertices of {a.name}")
        return rep_from_rows(a, decl.dims, decl.maps, name=decl.name)

    def _vertex(self, a: Algebra, vertex: str, decl: ModuleDecl) -> int:
        if vertex not in a.quiver.vertex_index:
            raise ResolutionError(vertex, 'vertex', decl.line, decl.column)
        return a.quiver.vertex_index[vertex]

    def module(self, name: str) -> Rep:
        if name not in self._modules:
            if name not in self.document.modules:
                raise ResolutionError(name, 'module')
            self._modules[name] = self._build_module(self.document.modules[name])
            logger.debug(f"Built module {name} with dims {self._modules[name].dims}")
        return self._modules[name]

    # equivalence data

    def semtl_data(self, params, level: Optional[int] = None) -> SemtlData:
        """SemtlData from the lambda, sigma, m, n (and level) parameters of a task."""
        level = int(params['level'][0]) if level is None else level
        return SemtlData(
            self.algebra(params['lambda'][0]),
            self.algebra(params['sigma'][0]),
            self.module(params['m'][0]),
            self.module(params['n'][0]),
            level,
        )

    def __repr__(self):
        return (f"<Workspace field={self.field.name} algebras={len(self.document.algebras)} "
                f"modules={len(self.document.modules)}>")
