"""Command-line surface: analyze, classify, counterexample, lattice, verify.

stdout carries data only; diagnostics go to stderr.  Exit codes are
stable: 0 success, 2 parse error, 3 invalid operator, 4 dimension
mismatch, 5 enumeration cap exceeded, 1 failed verification suite.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import verify as verify_mod
from .classify import (
    classify,
    hyperinvariant_lattice,
    is_characteristic,
    is_hyperinvariant,
    is_invariant,
)
from .commutant import UNIT_ENUM_CAP, commutant_basis, enumerate_automorphisms
from .errors import (
    CapExceeded,
    DimensionMismatch,
    Gf2HyperError,
    NotNilpotent,
    NotSquare,
    ParseError,
)
from .gf2 import (
    Gf2Matrix,
    Gf2Vector,
    Subspace,
    enumerate_subspaces,
    format_subspace,
    parse_matrix,
    parse_subspace,
)
from .nilpotent import (
    NilpotentOperator,
    elementary_divisors,
    ulm_sequence,
    validate_nilpotent,
)
from .shoda import ShodaWitness, counterexample

DEFAULT_LATTICE_CAP = 1 << 24


def _matrix_to_obj(m: Gf2Matrix) -> dict:
    return {
        "n_rows": m.n_rows,
        "n_cols": m.n_cols,
        "rows": [list(m.row(i).coords()) for i in range(m.n_rows)],
    }


def _matrix_from_obj(obj: dict) -> Gf2Matrix:
    rows = obj["rows"]
    if len(rows) != obj["n_rows"]:
        raise ParseError("row count does not match n_rows")
    if not rows:
        return Gf2Matrix.zeros(0, obj["n_cols"])
    return Gf2Matrix.from_rows(rows)


def _subspace_to_obj(s: Subspace) -> dict:
    return {
        "ambient_dim": s.ambient_dim,
        "basis": [list(v.coords()) for v in s.basis],
    }


def _subspace_from_obj(obj: dict) -> Subspace:
    vectors = [Gf2Vector.from_coords(c) for c in obj["basis"]]
    return Subspace.span(vectors, obj["ambient_dim"])


@dataclass(frozen=True)
class ShodaWitnessDocument:
    rho_index: int
    tau_index: int
    a_rho: int
    a_tau: int
    z: Gf2Vector
    y_span: Subspace

    @classmethod
    def from_witness(cls, w: ShodaWitness) -> ShodaWitnessDocument:
        return cls(w.rho_index, w.tau_index, w.a_rho, w.a_tau, w.z, w.y_span)

    def to_obj(self) -> dict:
        return {
            "rho_index": self.rho_index,
            "tau_index": self.tau_index,
            "a_rho": self.a_rho,
            "a_tau": self.a_tau,
            "z": list(self.z.coords()),
            "y_span": _subspace_to_obj(self.y_span),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> ShodaWitnessDocument:
        return cls(
            obj["rho_index"],
            obj["tau_index"],
            obj["a_rho"],
            obj["a_tau"],
            Gf2Vector.from_coords(obj["z"]),
            _subspace_from_obj(obj["y_span"]),
        )


@dataclass(frozen=True)
class LatticeCensusDocument:
    invariant: int
    characteristic: int
    hyperinvariant: int
    characteristic_not_hyperinvariant: int

    def to_obj(self) -> dict:
        return {
            "invariant": self.invariant,
            "characteristic": self.characteristic,
            "hyperinvariant": self.hyperinvariant,
            "characteristic_not_hyperinvariant": self.characteristic_not_hyperinvariant,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> LatticeCensusDocument:
        return cls(
            obj["invariant"],
            obj["characteristic"],
            obj["hyperinvariant"],
            obj["characteristic_not_hyperinvariant"],
        )


@dataclass(frozen=True)
class AnalysisDocument:
    """Everything cmd_analyze reports; round-trips losslessly via JSON."""

    matrix: Gf2Matrix
    nilpotency_index: int
    elementary_divisors: tuple[int, ...]
    ulm_sequence: tuple[int, ...]
    commutant_dimension: int
    automorphism_count: int | None
    shoda_holds: bool
    shoda_witness: ShodaWitnessDocument | None
    lattice_census: LatticeCensusDocument | None

    def to_obj(self) -> dict:
        return {
            "matrix": _matrix_to_obj(self.matrix),
            "nilpotency_index": self.nilpotency_index,
            "elementary_divisors": list(self.elementary_divisors),
            "ulm_sequence": list(self.ulm_sequence),
            "commutant_dimension": self.commutant_dimension,
            "automorphism_count": self.automorphism_count,
            "shoda_holds": self.shoda_holds,
            "shoda_witness": self.shoda_witness.to_obj() if self.shoda_witness else None,
            "lattice_census": self.lattice_census.to_obj() if self.lattice_census else None,
        }

    @classmethod
    def from_obj(cls, obj: dict) -> AnalysisDocument:
        return cls(
            matrix=_matrix_from_obj(obj["matrix"]),
            nilpotency_index=obj["nilpotency_index"],
            elementary_divisors=tuple(obj["elementary_divisors"]),
            ulm_sequence=tuple(obj["ulm_sequence"]),
            commutant_dimension=obj["commutant_dimension"],
            automorphism_count=obj["automorphism_count"],
            shoda_holds=obj["shoda_holds"],
            shoda_witness=(
                ShodaWitnessDocument.from_obj(obj["shoda_witness"])
                if obj["shoda_witness"]
                else None
            ),
            lattice_census=(
                LatticeCensusDocument.from_obj(obj["lattice_census"])
                if obj["lattice_census"]
                else None
            ),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2)

    @classmethod
    def from_json(cls, text: str) -> AnalysisDocument:
        return cls.from_obj(json.loads(text))


def _read_matrix(path: str) -> Gf2Matrix:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def _read_subspace(path: str) -> Subspace:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_subspace(text)


def build_analysis(
    f: NilpotentOperator, cap: int = UNIT_ENUM_CAP, census: bool = False
) -> AnalysisDocument:
    ulm = ulm_sequence(f)
    c = commutant_basis(f)
    aut_count = None
    if (1 << c.dim) <= cap:
        aut_count = len(enumerate_automorphisms(c, cap))
    found = counterexample(f)
    witness_doc = ShodaWitnessDocument.from_witness(found[1]) if found else None
    census_doc = None
    if census:
        inv = char = hyper = 0
        for s in enumerate_subspaces(f.dim, cap=DEFAULT_LATTICE_CAP):
            if not is_invariant(f, s):
                continue
            inv += 1
            verdict, complete, _ = is_characteristic(f, s, cap=cap)
            assert complete
            char += verdict
            hyper += is_hyperinvariant(f, s)[0]
        census_doc = LatticeCensusDocument(inv, char, hyper, char - hyper)
    return AnalysisDocument(
        matrix=f.mat,
        nilpotency_index=f.index,
        elementary_divisors=elementary_divisors(ulm),
        ulm_sequence=ulm.d,
        commutant_dimension=c.dim,
        automorphism_count=aut_count,
        shoda_holds=found is not None,
        shoda_witness=witness_doc,
        lattice_census=census_doc,
    )


def _cmd_analyze(args: argparse.Namespace) -> int:
    f = validate_nilpotent(_read_matrix(args.matrix))
    doc = build_analysis(f, cap=args.cap, census=args.census)
    if args.json:
        print(doc.to_json())
        return 0
    print(f"operator: {f.dim} x {f.dim} nilpotent, index {doc.nilpotency_index}")
    print("elementary divisors:", " ".join(map(str, doc.elementary_divisors)))
    print("ulm sequence:", " ".join(map(str, doc.ulm_sequence)))
    print("commutant dimension:", doc.commutant_dimension)
    if doc.automorphism_count is None:
        print("automorphisms: not enumerated (above cap)")
    else:
        print(f"automorphisms: {doc.automorphism_count} (exhaustive)")
    if doc.shoda_witness is None:
        print("characteristic non-hyperinvariant subspaces: NONE")
    else:
        w = doc.shoda_witness
        print(
            "characteristic non-hyperinvariant subspaces: EXIST "
            f"(block sizes {w.a_rho} < {w.a_tau})"
        )
        print("  example basis:")
        for v in w.y_span.basis:
            print("   ", v.to_text())
    if doc.lattice_census is not None:
        cen = doc.lattice_census
        print(
            "census: invariant={} characteristic={} hyperinvariant={}".format(
                cen.invariant, cen.characteristic, cen.hyperinvariant
            )
        )
    return 0


def _cmd_classify(args: argparse.Namespace) -> int:
    f = validate_nilpotent(_read_matrix(args.matrix))
    s = _read_subspace(args.subspace)
    if s.ambient_dim != f.dim:
        raise DimensionMismatch(
            f"subspace lives in GF(2)^{s.ambient_dim}, operator in GF(2)^{f.dim}"
        )
    report = classify(f, s, cap=args.cap)
    if args.json:
        obj = {
            "subspace": _subspace_to_obj(report.subspace),
            "invariant": report.invariant,
            "marked": report.marked,
            "characteristic": report.characteristic,
            "characteristic_complete": report.characteristic_complete,
            "hyperinvariant": report.hyperinvariant,
        }
        for key, witness in (
            ("invariance_witness", report.invariance_witness),
            ("characteristic_witness", report.characteristic_witness),
            ("hyperinvariance_witness", report.hyperinvariance_witness),
        ):
            obj[key] = (
                None
                if witness is None
                else {
                    "matrix": _matrix_to_obj(witness.matrix),
                    "vector": list(witness.vector.coords()),
                }
            )
        print(json.dumps(obj, indent=2))
        return 0
    print(
        "invariant={} marked={} characteristic={} hyperinvariant={}".format(
            str(report.invariant).lower(),
            str(report.marked).lower(),
            str(report.characteristic).lower(),
            str(report.hyperinvariant).lower(),
        )
    )
    if not report.characteristic_complete:
        print("note: characteristic verdict is sampled, not exhaustive")
    for label, witness in (
        ("invariance", report.invariance_witness),
        ("characteristic", report.characteristic_witness),
        ("hyperinvariance", report.hyperinvariance_witness),
    ):
        if witness is None:
            continue
        moved = witness.matrix.apply(witness.vector)
        print(f"{label} witness: maps [{witness.vector.to_text()}] to [{moved.to_text()}]")
        for i in range(witness.matrix.n_rows):
            print("   ", witness.matrix.row(i).to_text())
    return 0


def _cmd_counterexample(args: argparse.Namespace) -> int:
    f = validate_nilpotent(_read_matrix(args.matrix))
    found = counterexample(f)
    if args.json:
        obj = None
        if found is not None:
            obj = ShodaWitnessDocument.from_witness(found[1]).to_obj()
        print(json.dumps({"counterexample": obj}, indent=2))
        return 0
    if found is None:
        print("NONE")
        return 0
    y_span, witness = found
    print(format_subspace(y_span))
    print(f"# block sizes: r={witness.a_rho} s={witness.a_tau}")
    print(f"# linking vector: {witness.z.to_text()}")
    return 0


def _node_digest(s: Subspace) -> str:
    payload = f"{s.ambient_dim}:{s.rows}".encode()
    return hashlib.sha1(payload).hexdigest()[:8]


def _covering_edges(nodes: list[Subspace]) -> list[tuple[int, int]]:
    """Edges of the covering relation only; transitive pairs are dropped."""
    count = len(nodes)
    above = [0] * count  # above[i]: bitmask of j with nodes[i] strictly inside nodes[j]
    for i in range(count):
        for j in range(count):
            if i != j and nodes[i] != nodes[j] and nodes[j].contains_subspace(nodes[i]):
                above[i] |= 1 << j
    edges = []
    for i in range(count):
        sup = above[i]
        m = sup
        while m:
            j = (m & -m).bit_length() - 1
            m &= m - 1
            # j covers i unless some k sits strictly between them
            if not any(
                (above[k] >> j) & 1
                for k in range(count)
                if k != j and (sup >> k) & 1
            ):
                edges.append((i, j))
    return edges


def _lattice_nodes(
    f: NilpotentOperator, which: str, cap: int
) -> list[Subspace]:
    if which == "hinv":
        return list(hyperinvariant_lattice(f))
    nodes = []
    for s in enumerate_subspaces(f.dim, cap=cap):
        if not is_invariant(f, s):
            continue
        if which == "inv":
            nodes.append(s)
        else:
            ok, complete, _ = is_characteristic(f, s, method="generators")
            assert complete
            if ok:
                nodes.append(s)
    nodes.sort(key=lambda s: (s.dim, s.rows))
    return nodes


def _cmd_lattice(args: argparse.Namespace) -> int:
    f = validate_nilpotent(_read_matrix(args.matrix))
    nodes = _lattice_nodes(f, args.which, args.cap)
    edges = _covering_edges(nodes)
    if args.dot:
        print("digraph lattice {")
        print("  rankdir=BT;")
        ids = []
        for s in nodes:
            digest = _node_digest(s)
            ids.append(f"d{s.dim}_{digest}")
            print(f'  {ids[-1]} [label="dim {s.dim}\\n{digest}"];')
        for i, j in edges:
            print(f"  {ids[i]} -> {ids[j]};")
        print("}")
        return 0
    obj = {
        "which": args.which,
        "nodes": [
            {"id": _node_digest(s), "dim": s.dim, **_subspace_to_obj(s)} for s in nodes
        ],
        "edges": list(map(list, edges)),
    }
    if args.json:
        print(json.dumps(obj, indent=2))
        return 0
    print(f"{len(nodes)} nodes, {len(edges)} covering edges")
    for s in nodes:
        print(f"dim {s.dim}  [{_node_digest(s)}]")
        for v in s.basis:
            print("   ", v.to_text())
    return 0


def _cmd_verify(args: argparse.Namespace) -> int:
    results = verify_mod.run_suite(args.suite, args.max_dim)
    failures = 0
    for r in results:
        status = "ok" if r.ok else "FAIL"
        detail = f"  {r.detail}" if r.detail else ""
        print(f"{status} {r.name}{detail}")
        failures += not r.ok
    print(f"{len(results) - failures}/{len(results)} checks passed")
    return 1 if failures else 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gf2hyper",
        description=(
            "Exact analysis of nilpotent operators over GF(2): invariant, "
            "marked, characteristic and hyperinvariant subspaces."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="structure report for an operator")
    p.add_argument("matrix", help="matrix file: 'n_rows n_cols' then 0/1 rows")
    p.add_argument("--json", action="store_true")
    p.add_argument("--census", action="store_true", help="count subspace classes")
    p.add_argument("--cap", type=int, default=UNIT_ENUM_CAP)
    p.set_defaults(handler=_cmd_analyze)

    p = sub.add_parser("classify", help="four-predicate report for a subspace")
    p.add_argument("matrix")
    p.add_argument("subspace", help="basis rows in the matrix file format")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=UNIT_ENUM_CAP)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser(
        "counterexample", help="characteristic non-hyperinvariant subspace or NONE"
    )
    p.add_argument("matrix")
    p.add_argument("--json", action="store_true")
    p.set_defaults(handler=_cmd_counterexample)

    p = sub.add_parser("lattice", help="subspace lattice with covering edges")
    p.add_argument("matrix")
    p.add_argument("--which", choices=["hinv", "chinv", "inv"], default="hinv")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--dot", action="store_true")
    group.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=DEFAULT_LATTICE_CAP)
    p.set_defaults(handler=_cmd_lattice)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", choices=["paper", "census", "oracle"], required=True)
    p.add_argument("--max-dim", type=int, default=None)
    p.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotSquare, NotNilpotent) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except DimensionMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 5
    except Gf2HyperError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
