"""Mimp-graphs: shared proof graphs for minimal implicational logic."""

from .corpus import CorpusSpec, gen_corpus
from .dot import export_dot
from .formula import Atom, Formula, FormulaSyntaxError, Impl, format_formula, parse_formula, subformulas
from .mimp_graph import (
    CyclicOrder,
    Edge,
    MimpGraph,
    MimpGraphError,
    Node,
    NodeKind,
    Role,
    Violation,
    apply_imp_elim,
    apply_imp_intro,
    basis,
    canonical_form,
    conclusion,
    hypotheses,
    inferential_order,
    merge,
    validate,
)
from .nd_proof import (
    Hyp,
    ImpElim,
    ImpIntro,
    Judgement,
    ProofError,
    ProofSyntaxError,
    check_proof,
    format_proof,
    parse_proof,
    tree_normalize,
    tree_redexes,
)
from .normalization import (
    NotARedex,
    PreconditionViolated,
    Redex,
    branches,
    eliminate,
    explore_all,
    find_redexes,
    is_normal,
    nmax,
    normalize,
    reorder,
)
from .serialize import dumps_graph, loads_graph
from .translation import TranslationCert, f_minimal_check, to_mimp

__all__ = [name for name in dir() if not name.startswith("_")]
