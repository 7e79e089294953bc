"""``lgms`` command line front end."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .errors import DegenerateError, GroupOrderError, ModelError, PreconditionError
from .geometry import cr_sigma_diamonds, geometric_oracle_diamond, k3_invariants
from .mirror import semi_cy_report
from .polyspec import (ModelSpec, classify_atoms, model_from_dict,
                       parse_document, weights_of)
from .product import direct_product_table, product_mirror_check
from .render import dumps, envelope, render_diamond
from .statespace import PIECES, four_piece_split
from .symmetry import ORDER_CAP, dual_group, duality_diagram_check, resolve_group
from .tables import BigradedTable

COMMANDS = ("weights", "atoms", "group", "dual", "statespace", "diamond", "sigma",
            "mirror-check", "oracle-check", "product", "k3", "corpus")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_ABORT = 0, 1, 2, 3


@dataclass
class RunConfig:
    command: str
    paths: List[str] = field(default_factory=list)
    fmt: str = "text"
    cap: int = ORDER_CAP
    jobs: int = 1
    verbose: bool = False
    direct_product_check: bool = False
    matrix: Optional[str] = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.cap < 1:
            raise ValueError("cap must be at least 1")


@dataclass
class Outcome:
    status: int
    payload: dict
    text: str


# ---- loading ---------------------------------------------------------------

def load_document(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {path}: {exc.strerror}") from None
    return parse_document(text)


def spec_group(spec: ModelSpec, cap):
    return resolve_group(spec.matrix, spec.group, spec.generators, cap)


def load_blocks(doc: dict, stem: str):
    """(matrix, group-spec, name) blocks of a product document."""
    blocks = doc.get("blocks")
    if not isinstance(blocks, list) or len(blocks) != 2:
        raise ModelError("a product document needs exactly two [[blocks]]")
    return [model_from_dict(b, f"{stem}[{i}]") for i, b in enumerate(blocks)]


def is_product(doc: dict) -> bool:
    return doc.get("kind") == "product"


# ---- individual commands ---------------------------------------------------

def _table_text(title: str, table: BigradedTable) -> str:
    return render_diamond(table, title)


def cmd_weights(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    ws = weights_of(spec.matrix)
    text = f"{ws} half-CY: {'true' if ws.half_cy else 'false'}"
    return Outcome(EXIT_OK, {"weights": list(ws.weights), "degree": ws.degree,
                             "half_cy": ws.half_cy}, text)


def cmd_atoms(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    atoms = classify_atoms(spec.matrix)
    payload = {"atoms": [{"kind": a.kind, "variables": [j + 1 for j in a.variables],
                          "exponents": list(a.exponents)} for a in atoms]}
    return Outcome(EXIT_OK, payload, " + ".join(str(a) for a in atoms))


def cmd_group(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    gens = [[str(c) for c in x.components] for x in g.generator_symmetries()]
    payload = {"order": g.order, "generators": gens}
    if cfg.verbose:
        payload["elements"] = g.to_json()
    text = f"order {g.order}; generators " + ", ".join(
        "(" + ",".join(x) + ")" for x in gens)
    return Outcome(EXIT_OK, payload, text)


def cmd_dual(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    d = dual_group(spec.matrix, g, cfg.cap)
    back = dual_group(spec.matrix.transpose(), d, cfg.cap)
    diagram = duality_diagram_check(spec.matrix, g, cfg.cap)
    ok = back == g and diagram.ok
    payload = {"dual_polynomial": spec.matrix.transpose().polynomial(),
               "dual_order": d.order, "involutive": back == g,
               "dual_generators": [[str(c) for c in x.components]
                                   for x in d.generator_symmetries()],
               "diagram": diagram.to_json(), "ok": ok}
    text = (f"W* = {spec.matrix.transpose().polynomial()}\n|G| = {g.order}, |G*| = {d.order}, "
            f"(G*)* = G: {back == g}, diagram: {'pass' if diagram.ok else 'FAIL'}")
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, text)


def cmd_statespace(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    fp = four_piece_split(spec.matrix, g, cfg.jobs, cfg.cap)
    lemma = fp.lemma_check()
    payload = {"total": fp.total.to_json(),
               "pieces": {k: fp[k].to_json() for k in PIECES}, "lemma": lemma}
    if cfg.verbose:
        payload["sectors"] = fp.space.dump()
    parts = [_table_text("H_{G[s,J]}(V)^{G[J_V]}", fp.total)]
    for k in PIECES:
        parts.append(_table_text(f"[H]_{k}", fp[k]))
    parts.append("lemma grading split: " + ("pass" if all(lemma.values()) else "FAIL"))
    return Outcome(EXIT_OK if all(lemma.values()) else EXIT_FAIL, payload, "\n".join(parts))


def cmd_diamond(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    dia = cr_sigma_diamonds(spec.matrix, g, cfg.jobs, cfg.cap)
    payload = {"dim": dia.cr.dim, "table": dia.cr.table.to_json(),
               "plus": dia.cr.plus.to_json(), "minus": dia.cr.minus.to_json()}
    text = "\n".join([_table_text(f"H_CR(Sigma), dimension {dia.cr.dim}", dia.cr.table),
                      _table_text("sigma-invariant", dia.cr.plus),
                      _table_text("sigma-anti-invariant", dia.cr.minus)])
    return Outcome(EXIT_OK, payload, text)


def cmd_sigma(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    dia = cr_sigma_diamonds(spec.matrix, g, cfg.jobs, cfg.cap)
    ok = dia.quotient_ok()
    payload = {"dim": dia.sigma.dim, "table": dia.sigma.table.to_json(),
               "plus": dia.sigma.plus.to_json(), "minus": dia.sigma.minus.to_json(),
               "quotient": dia.quotient.to_json(), "quotient_ok": ok}
    text = "\n".join([_table_text(f"H_sigma(X), dimension {dia.sigma.dim}", dia.sigma.table),
                      _table_text("sigma-invariant", dia.sigma.plus),
                      _table_text("sigma-anti-invariant", dia.sigma.minus),
                      f"[Sigma/sigma] check: {'pass' if ok else 'FAIL'}"])
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, text)


def cmd_mirror(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    rep = semi_cy_report(spec.matrix, g, spec.name, cfg.jobs, cfg.cap)
    lines = [f"{spec.name or spec.matrix.polynomial()} vs {rep.dual_name}"]
    if rep.precondition:
        lines.append(f"precondition failed: {rep.precondition}")
    for c in rep.checks:
        line = f"  {c.label}: {'pass' if c.ok else 'FAIL'}"
        if c.first_mismatch:
            (p, q), a, b = c.first_mismatch
            line += f" at ({p},{q}): {a} vs {b}"
        lines.append(line)
    if rep.diagram_ok is not None:
        lines.append(f"  duality diagram: {'pass' if rep.diagram_ok else 'FAIL'}")
    payload = rep.to_json()
    if not cfg.verbose:
        payload.pop("checks")
    return Outcome(EXIT_OK if rep.ok else EXIT_FAIL, payload, "\n".join(lines))


def cmd_oracle(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    oracle = geometric_oracle_diamond(spec.matrix, g, cfg.cap)
    lg = four_piece_split(spec.matrix, g, cfg.jobs, cfg.cap).total.shift(-1)
    diff = oracle.total.first_difference(lg)
    ok = diff is None
    payload = {"ok": ok, "oracle": oracle.total.to_json(), "lg": lg.to_json(),
               "components": [c.to_json() for c in oracle.components]}
    lines = [_table_text("geometric sectors", oracle.total),
             f"components: {len(oracle.components)}",
             f"LG/CY agreement: {'pass' if ok else 'FAIL'}"]
    if diff:
        (p, q), a, b = diff
        lines.append(f"first mismatch at ({p},{q}): {a} vs {b}")
    if cfg.verbose:
        for c in oracle.components:
            lines.append(f"  {c.kind} gamma={c.gamma} lambda={c.lam} F={list(c.fixed)} "
                         f"{c.equation} age={c.tangent_age}")
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, "\n".join(lines))


def cmd_k3(cfg: RunConfig, spec: ModelSpec) -> Outcome:
    g = spec_group(spec, cfg.cap)
    inv = k3_invariants(spec.matrix, g, cfg.jobs, cfg.cap)
    dual = k3_invariants(spec.matrix.transpose(), dual_group(spec.matrix, g, cfg.cap),
                         cfg.jobs, cfg.cap)
    swap = (inv.n_components, inv.genus) == (dual.genus, dual.n_components)
    payload = {"model": inv.to_json(), "dual": dual.to_json(), "swap_ok": swap}
    if inv.special:
        text = "N = N' = 0: empty fixed locus, (r, a) not inverted"
    else:
        text = (f"N = {inv.n_components}, N' = {inv.genus}, components = "
                f"{inv.fixed_components}\n(r, a) = ({inv.r}, {inv.a}), mirror "
                f"(20-r, a) = {inv.mirror}; delta not computed")
    text += f"\ndual: (N, N') = ({dual.n_components}, {dual.genus}); swap {'pass' if swap else 'FAIL'}"
    return Outcome(EXIT_OK if swap else EXIT_FAIL, payload, text)


def cmd_product(cfg: RunConfig, blocks: List[ModelSpec]) -> Outcome:
    b = [(s.matrix, spec_group(s, cfg.cap), s.name) for s in blocks]
    chk = product_mirror_check(b[0], b[1], cfg.jobs, cfg.cap)
    ok = chk.ok
    payload = chk.to_json()
    lines = [_table_text(f"H_CR of the product, dimension {chk.product.dim}",
                         chk.product.table),
             f"mirror rotation: {'pass' if chk.ok else 'FAIL'}"]
    if cfg.direct_product_check:
        direct = direct_product_table(b[0], b[1], cfg.jobs, cfg.cap)
        same = direct == chk.product.table
        ok = ok and same
        payload["direct"] = {"ok": same, "table": direct.to_json()}
        lines.append(f"direct build: {'pass' if same else 'FAIL'}")
    return Outcome(EXIT_OK if ok else EXIT_FAIL, payload, "\n".join(lines))


MODEL_COMMANDS = {
    "weights": cmd_weights, "atoms": cmd_atoms, "group": cmd_group, "dual": cmd_dual,
    "statespace": cmd_statespace, "diamond": cmd_diamond, "sigma": cmd_sigma,
    "mirror-check": cmd_mirror, "oracle-check": cmd_oracle, "k3": cmd_k3,
}


# ---- corpus ----------------------------------------------------------------

def _compare(expected: list, got: BigradedTable) -> bool:
    return BigradedTable.from_json(expected) == got


def run_entry(path: str, cap: int = ORDER_CAP, jobs: int = 1) -> dict:
    """Run every check a sidecar asks for on one corpus file."""
    p = Path(path)
    sidecar = p.with_name(p.stem + ".expected.json")
    result = {"model": p.name, "checks": {}}
    if not sidecar.exists():
        result["skipped"] = "missing sidecar"
        return result
    try:
        expected = json.loads(sidecar.read_text())
        doc = load_document(path)
        checks = result["checks"]
        if is_product(doc):
            blocks = load_blocks(doc, p.stem)
            b = [(s.matrix, spec_group(s, cap), s.name) for s in blocks]
            chk = product_mirror_check(b[0], b[1], jobs, cap)
            if "product" in expected:
                checks["product"] = _compare(expected["product"], chk.product.table)
            checks["product-mirror"] = chk.ok
            if expected.get("direct"):
                checks["direct"] = direct_product_table(b[0], b[1], jobs, cap) == chk.product.table
            return result
        spec = model_from_dict(doc, p.stem)
        g = spec_group(spec, cap)
        dia = cr_sigma_diamonds(spec.matrix, g, jobs, cap)
        for key, table in (("cr_plus", dia.cr.plus), ("cr_minus", dia.cr.minus),
                           ("sigma_plus", dia.sigma.plus), ("sigma_minus", dia.sigma.minus)):
            if key in expected:
                checks[key] = _compare(expected[key], table)
        checks["quotient"] = dia.quotient_ok()
        rep = semi_cy_report(spec.matrix, g, spec.name, jobs, cap)
        checks["mirror"] = rep.ok == expected.get("mirror", True)
        oracle = geometric_oracle_diamond(spec.matrix, g, cap)
        checks["oracle"] = oracle.total == dia.pieces.total.shift(-1)
        if "k3" in expected:
            inv = k3_invariants(spec.matrix, g, jobs, cap)
            want = expected["k3"]
            checks["k3"] = all(inv.to_json().get(k) == v for k, v in want.items())
    except (ModelError, PreconditionError, GroupOrderError, DegenerateError,
            json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        result["error"] = f"{type(exc).__name__}: {exc}"
    return result


def corpus_run(directory: str, cap: int = ORDER_CAP, jobs: int = 1) -> dict:
    d = Path(directory)
    if not d.is_dir():
        raise ModelError(f"{directory} is not a directory")
    paths = sorted(str(p) for p in d.glob("*.toml"))
    if jobs > 1 and len(paths) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            entries = list(pool.map(run_entry, paths, [cap] * len(paths)))
    else:
        entries = [run_entry(p, cap) for p in paths]
    for e in entries:
        if "skipped" in e:
            warnings.warn(f"{e['model']}: {e['skipped']}")
    ok = all("error" not in e and all(e["checks"].values()) for e in entries)
    return {"ok": ok, "models": len(entries), "entries": entries}


def cmd_corpus(cfg: RunConfig) -> Outcome:
    summary = corpus_run(cfg.paths[0], cfg.cap, cfg.jobs)
    lines = []
    for e in summary["entries"]:
        if "skipped" in e:
            lines.append(f"{e['model']}: skipped ({e['skipped']})")
            continue
        if "error" in e:
            lines.append(f"{e['model']}: ERROR {e['error']}")
            continue
        marks = " ".join(f"{k}={'pass' if v else 'FAIL'}" for k, v in e["checks"].items())
        lines.append(f"{e['model']}: {marks}")
    lines.append(f"{summary['models']} models, {'all pass' if summary['ok'] else 'FAILURES'}")
    return Outcome(EXIT_OK if summary["ok"] else EXIT_FAIL, summary, "\n".join(lines))


# ---- entry point -----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="lgms", description=(
        "Landau-Ginzburg state spaces, orbifold Hodge diamonds and "
        "Berglund-Huebsch mirror checks for half-Calabi-Yau models."))
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("paths", nargs="*", help="model file(s), or a corpus directory")
    ap.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    ap.add_argument("--cap", type=int, default=None,
                    help=f"group order cap (default {ORDER_CAP}, env LGMS_CAP)")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--verbose", action="store_true")
    ap.add_argument("--direct-product-check", action="store_true")
    ap.add_argument("--matrix", help='exponent matrix, e.g. "[[2]]" (weights/atoms/group)')
    return ap


def make_config(argv) -> RunConfig:
    args = build_parser().parse_intermixed_args(argv)
    cap = args.cap
    if os.environ.get("LGMS_CAP"):
        cap = int(os.environ["LGMS_CAP"])
    return RunConfig(args.command, args.paths, args.fmt, cap or ORDER_CAP,
                     max(1, args.jobs), args.verbose, args.direct_product_check, args.matrix)


def _model_from_matrix(text: str) -> ModelSpec:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"malformed --matrix: {exc}") from None
    return model_from_dict({"monomials": rows}, "matrix")


def dispatch(cfg: RunConfig) -> Outcome:
    if cfg.command == "corpus":
        if len(cfg.paths) != 1:
            raise ModelError("corpus takes one directory")
        return cmd_corpus(cfg)
    if cfg.command == "product":
        if len(cfg.paths) == 1:
            doc = load_document(cfg.paths[0])
            if not is_product(doc):
                raise ModelError("product needs a product document or two model files")
            blocks = load_blocks(doc, Path(cfg.paths[0]).stem)
        elif len(cfg.paths) == 2:
            blocks = [model_from_dict(load_document(p), Path(p).stem) for p in cfg.paths]
        else:
            raise ModelError("product needs a product document or two model files")
        return cmd_product(cfg, blocks)
    if cfg.matrix is not None:
        spec = _model_from_matrix(cfg.matrix)
    elif len(cfg.paths) == 1:
        doc = load_document(cfg.paths[0])
        if is_product(doc):
            raise ModelError(f"{cfg.command} expects a single model, not a product document")
        spec = model_from_dict(doc, Path(cfg.paths[0]).stem)
    else:
        raise ModelError(f"{cfg.command} takes exactly one model file (or --matrix)")
    return MODEL_COMMANDS[cfg.command](cfg, spec)


def run_command(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        cfg = make_config(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    except ValueError as exc:
        print(f"lgms: {exc}", file=err)
        return EXIT_INPUT
    try:
        outcome = dispatch(cfg)
    except (ModelError, PreconditionError) as exc:
        print(f"lgms: input error: {exc}", file=err)
        return EXIT_INPUT
    except (GroupOrderError, DegenerateError) as exc:
        print(f"lgms: aborted: {exc}", file=err)
        return EXIT_ABORT
    if cfg.fmt == "json":
        print(dumps(envelope(cfg.command, outcome.payload)), file=out)
    else:
        print(outcome.text, file=out)
    return outcome.status


def main() -> None:
    sys.exit(run_command())
