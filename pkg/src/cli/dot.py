"""
DOT rendering of morphisms and decomposition witnesses.

A morphism is an arrow between two nodes; a sequential witness adds the
intermediate object (a triangle); a parallel witness is the square
C₁⊗C₂ → D₁⊗D₂ with iso edges "∼" into dom(f) and cod(f).
"""

from typing import List, Optional, Tuple

from src.cli.document import Workspace, build_workspace
from src.cli.queries import Options, decompose_par, decompose_seq, require_morphism
from src.core.morphisms import Morphism
from src.core.outcome import SEQUENTIAL, DecompositionOutcome
from src.enums import PRODUCT_SYMBOLS, DiagramOf
from src.schemas import Document

TEMPLATE = """digraph process {
  rankdir = "LR" ;
  node [fontname="Helvetica", fontsize=10, shape=plaintext] ;

  // The nodes
  %s

  // The edges
  %s
}
"""


def _quote(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')


def render(f: Morphism, outcome: Optional[DecompositionOutcome] = None, name: str = "f") -> str:
    nodes: List[Tuple[str, str]] = [("dom", str(f.dom)), ("cod", str(f.cod))]
    edges: List[Tuple[str, str, str]] = [("dom", "cod", name)]

    if outcome is not None and outcome.factors is not None:
        first, second = outcome.factors
        if outcome.shape == SEQUENTIAL:
            nodes.append(("mid", str(first.cod) if first.cod.name else "C"))
            edges += [("dom", "mid", f"{name}₁"), ("mid", "cod", f"{name}₂")]
        else:
            sym = PRODUCT_SYMBOLS[f.instance.product]
            nodes += [("pdom", f"C₁{sym}C₂"), ("pcod", f"D₁{sym}D₂")]
            edges += [
                ("pdom", "pcod", f"{name}₁{sym}{name}₂"),
                ("pdom", "dom", "∼"),
                ("pcod", "cod", "∼"),
            ]

    node_lines = sorted(f'"{nid}" [label="{_quote(label)}"] ;' for nid, label in nodes)
    edge_lines = sorted(f'"{a}" -> "{b}" [label="{_quote(label)}"] ;' for a, b, label in edges)
    return TEMPLATE % ("\n  ".join(node_lines), "\n  ".join(edge_lines))


def diagram(ws: Workspace, options: Options) -> Tuple[str, Optional[DecompositionOutcome]]:
    if options.of is DiagramOf.DECOMPOSE_SEQ:
        f, outcome = decompose_seq(ws, options)
    elif options.of is DiagramOf.DECOMPOSE_PAR:
        f, outcome = decompose_par(ws, options)
    else:
        f, outcome = require_morphism(ws, options), None
    return render(f, outcome, name=f.name or "f"), outcome


def emit_dot(doc: Document, query: Options) -> str:
    """DOT text for the morphism or decomposition named by the query."""
    return diagram(build_workspace(doc, query.tolerance), query)[0]
