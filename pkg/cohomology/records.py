"""JSON records for presentations and moment graphs."""

from pydantic import BaseModel, ConfigDict, field_validator

from .polyalg import CELL, PARAM, RingContext, Variable
from .zeroscheme import sign_flip


class VariableRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    name: str
    weight: int

    @field_validator("weight")
    @classmethod
    def weight_is_positive_even(cls, v):
        if v <= 0 or v % 2:
            raise ValueError(f"weight must be a positive even integer, got {v}")
        return v


class RingRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    params: list[VariableRecord]
    cells: list[VariableRecord]

    def context(self):
        cells = [Variable(v.name, v.weight, CELL) for v in self.cells]
        params = [Variable(v.name, v.weight, PARAM) for v in self.params]
        return RingContext(tuple(cells + params))


class PresentationBody(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kept: list[str]
    relations: list[str]


class PresentationRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variety: str
    family: str
    ring: RingRecord
    generators: list[str]
    presentation: PresentationBody
    rank: int | None = None
    hilbert_numerator: list[int] | None = None
    components: list[dict[str, str]] | None = None

    @classmethod
    def build(cls, ideal, presentation, components=None, paper_sign=False):
        fix = sign_flip if paper_sign else (lambda p: p)
        ctx = ideal.ctx
        ring = RingRecord(
            params=[VariableRecord(name=p, weight=ctx.weight(p)) for p in ctx.params],
            cells=[VariableRecord(name=c, weight=ctx.weight(c)) for c in ctx.cells],
        )
        comps = None
        if components is not None:
            comps = [{name: str(fix(v)) for name, v in c.values.items()} for c in components]
        return cls(
            variety=str(ideal.chart),
            family=str(ideal.family),
            ring=ring,
            generators=[str(fix(g)) for g in ideal.generators],
            presentation=PresentationBody(
                kept=list(presentation.kept),
                relations=[str(fix(r)) for r in presentation.relations],
            ),
            rank=presentation.rank,
            hilbert_numerator=None if presentation.poincare is None else list(presentation.poincare),
            components=comps,
        )

    def to_json(self):
        return self.model_dump_json(indent=2, exclude_none=True)

    @classmethod
    def parse(cls, text):
        return cls.model_validate_json(text)

    def generator_polynomials(self):
        ctx = self.ring.context()
        return [ctx.parse(g) for g in self.generators]

    def relation_polynomials(self):
        ctx = self.ring.context().restrict(self.presentation.kept)
        return [ctx.parse(r) for r in self.presentation.relations]


class EdgeRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    i: int
    j: int
    form: str


class GraphRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    vertices: list[str]
    edges: list[EdgeRecord]

    @classmethod
    def build(cls, graph, paper_sign=False):
        fix = sign_flip if paper_sign else (lambda p: p)
        return cls(
            vertices=list(graph.vertices),
            edges=[EdgeRecord(i=e.i, j=e.j, form=str(fix(e.form).primitive())) for e in graph.edges],
        )

    def to_json(self):
        return self.model_dump_json(indent=2)

    @classmethod
    def parse(cls, text):
        return cls.model_validate_json(text)
