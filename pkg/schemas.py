"""
Pydantic schemas for the JSON documents read and written by the command line.
Defines validation and serialization for graphs, trees, terms, chains and prefixes.
"""

from typing import List, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MultiplicityValue = Union[int, Literal["omega"]]


class GraphPayload(BaseModel):
    """Schema for a graph on vertices 0..n-1."""

    n: int = Field(..., ge=0, description="Number of vertices")
    edges: List[List[int]] = Field(default_factory=list, description="Edges as [u, v] pairs")

    @field_validator("edges")
    @classmethod
    def edges_are_pairs(cls, edges: List[List[int]]) -> List[List[int]]:
        for edge in edges:
            if len(edge) != 2:
                raise ValueError(f"edge {edge} is not a pair")
        return edges


class TreeNodePayload(BaseModel):
    """Schema for a node of a valued meet-tree; leaves carry a vertex id."""

    value: Optional[Literal[0, 1]] = Field(None, description="Value of an internal node")
    children: List["TreeNodePayload"] = Field(default_factory=list, description="Child nodes")
    leaf: Optional[int] = Field(None, ge=0, description="Vertex id of a leaf")


class StrongModulePayload(BaseModel):
    """Schema for one member of a strong-module family."""

    model_config = ConfigDict(populate_by_name=True)

    vertex_subset: List[int] = Field(..., alias="vertexSubset", description="Vertices of the module")
    parent: Optional[int] = Field(None, description="Index of the least strictly larger member")
    gallai_type: Optional[str] = Field(None, alias="gallaiType", description="Type of the quotient")


class StrongFamilyPayload(BaseModel):
    """Schema for a strong-module family as a laminar forest in preorder."""

    n: int = Field(..., ge=0)
    nodes: List[StrongModulePayload]


class TermChildPayload(BaseModel):
    """Schema for a child of a sum term with its multiplicity."""

    term: "TermPayload"
    mult: MultiplicityValue = Field(1, description="Positive integer or \"omega\"")

    @field_validator("mult")
    @classmethod
    def mult_is_positive(cls, mult: MultiplicityValue) -> MultiplicityValue:
        if mult != "omega" and mult < 1:
            raise ValueError("multiplicity must be at least 1")
        return mult


class TermPayload(BaseModel):
    """Schema for a cograph term."""

    op: Literal["leaf", "dsum", "csum"]
    children: List[TermChildPayload] = Field(default_factory=list)

    @model_validator(mode="after")
    def sums_have_children(self) -> "TermPayload":
        if self.op != "leaf" and not self.children:
            raise ValueError(f"a {self.op} term needs at least one child")
        return self


class QuasiOrderPayload(BaseModel):
    """Schema for a finite quasi-order; the relation is closed reflexively and transitively."""

    elements: List[str] = Field(..., description="Label names")
    relation: List[List[str]] = Field(default_factory=list, description="Pairs [a, b] with a <= b")


class SegmentPayload(BaseModel):
    """Schema for a chain segment: a finite word or an omega-star power of a period."""

    kind: Literal["finite", "omegastar"]
    word: List[str]


class ChainPayload(BaseModel):
    """Schema for a regular labelled chain."""

    segments: List[SegmentPayload] = Field(default_factory=list)


class ChainDocument(BaseModel):
    """Schema for the input of the chain command."""

    order: QuasiOrderPayload
    chain: ChainPayload
    target: Optional[ChainPayload] = None


class PrefixEntryPayload(BaseModel):
    """Schema for one position of a chain prefix."""

    part: TermPayload
    bit: Literal[0, 1]
    anchor: bool = False


class PrefixPayload(BaseModel):
    """Schema for a chain prefix; positions run from the right end leftward."""

    positions: List[PrefixEntryPayload]


class VerdictResponse(BaseModel):
    """Schema for a sibling classification result."""

    model_config = ConfigDict(populate_by_name=True)

    verdict: Literal["One", "Infinite"]
    reason: Optional[str] = None
    class_count: MultiplicityValue = Field(..., alias="classCount")


class OracleReport(BaseModel):
    """Schema for one cross-check of a production algorithm against its oracle."""

    model_config = ConfigDict(populate_by_name=True)

    operation: str
    instance: str
    oracle_result: str = Field(..., alias="oracleResult")
    production_result: str = Field(..., alias="productionResult")
    agreement: bool

    @model_validator(mode="after")
    def agreement_matches_results(self) -> "OracleReport":
        if self.agreement != (self.oracle_result == self.production_result):
            raise ValueError("agreement must equal (oracleResult == productionResult)")
        return self


class MessageResponse(BaseModel):
    """Schema for simple message responses."""

    message: str
    success: bool = True


class ErrorResponse(BaseModel):
    """Schema for error responses."""

    detail: str
    success: bool = False


TreeNodePayload.model_rebuild()
TermChildPayload.model_rebuild()
