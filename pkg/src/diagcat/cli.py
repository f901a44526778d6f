"""Batch front-end: config loading, command dispatch, report emission.

Commands: gram, homdims, goodness, chareval, simples, loyal,
interpolate, presets.  Exit status 0 means pass/complete, 2 means a
failure with a witness in the report, 3 means inconclusive for budget
reasons, 1 means the configuration did not validate.

Reports are deterministic for a fixed config and seed: JSON uses
sorted keys and two-space indentation, CSV uses a fixed column order
documented per command:

  gram:    p, q, spanning_kind, spanning_size, t, rank
  homdims: p, q, dim, saturated, kind, size

A JSON config file (--config) supplies the same fields as the flags;
flags override file fields.  Exact scalars are printed as integers or
"num/den" strings, polynomial entries via their canonical string form.
"""

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, fields
from fractions import Fraction

from . import __version__
from .characters import (CharacterError, ConsistencyError, char_closed_form,
                         char_from_model, interpolate_family)
from .diagram import (Diagram, LinCombo, Signature, WiringError,
                      format_diagram, parse_diagram)
from .endalg import (EndalgError, is_semisimple, quotient_algebra,
                     simple_count)
from .goodness import check_goodness, check_loyal
from .gram import GramError, analyze, gram_matrix, gram_rank_at, hom_dim, \
    probe_values
from .models import ModelError, load_model
from .poly import Poly
from .presets import (PRESET_NAMES, PresetError, preset,
                      sample_closed_diagrams)
from .spans import EnumerationBudgetError

__all__ = ["RunConfig", "run", "main",
           "EXIT_OK", "EXIT_CONFIG", "EXIT_FAIL", "EXIT_INCONCLUSIVE"]

VERSION = __version__

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_FAIL = 2
EXIT_INCONCLUSIVE = 3


class ConfigError(ValueError):
    pass


# ---------------------------------------------------------------------------
# configuration

@dataclass
class RunConfig:
    command: str
    preset: str | None = None
    r: int | None = None
    pairs: tuple | None = None
    pq_list: tuple = ((1, 1), (2, 2))
    max_boxes: int | None = None
    cutoffs: tuple = (2, 3, 4)
    terms: int = 12
    r_max: int = 6
    samples: int = 16
    count: int = 20
    surplus: int = 3
    seed: int = 0
    t: str | None = None
    point: tuple | None = None
    points: tuple | None = None
    alpha: tuple | None = None
    alpha_file: str | None = None
    diagram: str | None = None
    diagram_file: str | None = None
    model_file: str | None = None
    signature_file: str | None = None
    action: str | None = None
    fmt: str = "json"
    out: str | None = None

    def echo(self):
        """Config round-trip for the report envelope; skips unset fields."""
        skip = {"command", "out"}
        body = {}
        for f in fields(self):
            if f.name in skip:
                continue
            value = getattr(self, f.name)
            if value is None:
                continue
            body[f.name] = _plain(value)
        return body


def _plain(value):
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, (list, dict, str, int, bool)) or value is None:
        return value
    return str(value)


def _norm_pair(value, what):
    if isinstance(value, str):
        parts = [s for s in value.replace(";", ",").split(",") if s.strip()]
    else:
        parts = list(value)
    if len(parts) != 2:
        raise ConfigError("%s needs two integers, got %r" % (what, value))
    return int(parts[0]), int(parts[1])


def _norm_pq_list(value):
    if isinstance(value, str):
        chunks = [c for c in value.split(";") if c.strip()]
        return tuple(_norm_pair(c, "--pq-list entry") for c in chunks)
    return tuple(_norm_pair(v, "pq_list entry") for v in value)


def _norm_ints(value, what):
    if isinstance(value, str):
        value = [s for s in value.split(",") if s.strip()]
    try:
        return tuple(int(v) for v in value)
    except (TypeError, ValueError):
        raise ConfigError("%s needs integers, got %r" % (what, value))


def _norm_scalars(value, what):
    if isinstance(value, str):
        value = [s for s in value.split(",") if s.strip()]
    try:
        return tuple(Fraction(str(v)) for v in value)
    except (TypeError, ValueError):
        raise ConfigError("%s needs exact rationals, got %r" % (what, value))


def _norm_point(value):
    """A dvr-style model point: prime and rank vector, "q:a1,a2"."""
    if isinstance(value, str):
        head, _, tail = value.partition(":")
        if not tail:
            raise ConfigError("--point looks like q:a1,...,ar, got %r"
                              % value)
        return int(head), tuple(int(v) for v in tail.split(",") if v.strip())
    prime, ranks = value
    return int(prime), tuple(int(v) for v in ranks)


def _norm_pairs(value):
    """Eigenvalue/weight pairs for the endo preset, "l1,w1;l2,w2"."""
    if isinstance(value, str):
        chunks = [c for c in value.split(";") if c.strip()]
        out = []
        for chunk in chunks:
            lam, _, w = chunk.partition(",")
            if not w:
                raise ConfigError("--pairs entry %r needs lambda,weight"
                                  % chunk)
            out.append((Fraction(lam), Fraction(w)))
        return tuple(out)
    return tuple((Fraction(str(lam)), Fraction(str(w))) for lam, w in value)


_NORMALIZERS = {
    "pq_list": _norm_pq_list,
    "cutoffs": lambda v: _norm_ints(v, "cutoffs"),
    "points": lambda v: _norm_ints(v, "points"),
    "alpha": lambda v: _norm_scalars(v, "alpha"),
    "point": _norm_point,
    "pairs": _norm_pairs,
}


def build_config(args):
    """Merge defaults, the optional JSON config file, then the flags."""
    known = {f.name for f in fields(RunConfig)}
    merged = {}
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError("unreadable config file %s: %s"
                              % (config_path, exc))
        if not isinstance(data, dict):
            raise ConfigError("config file must hold a JSON object")
        for key, value in data.items():
            if key not in known:
                raise ConfigError("unknown config field %r" % key)
            merged[key] = value
    for key, value in vars(args).items():
        if key in ("config",) or value is None:
            continue
        merged[key] = value
    for key, norm in _NORMALIZERS.items():
        if key in merged and merged[key] is not None:
            merged[key] = norm(merged[key])
    try:
        return RunConfig(**merged)
    except TypeError as exc:
        raise ConfigError(str(exc))


# ---------------------------------------------------------------------------
# report plumbing

def _scalar(x):
    if isinstance(x, Poly):
        return str(x)
    if isinstance(x, bool) or x is None:
        return x
    x = Fraction(x)
    if x.denominator == 1:
        return int(x)
    return str(x)


def _literal(x):
    if isinstance(x, LinCombo):
        terms = sorted((format_diagram(d), _scalar(c)) for d, c in x.items())
        return {"combination": [[c, d] for d, c in terms]}
    if isinstance(x, Diagram):
        return format_diagram(x)
    return str(x)


def _envelope(config, body):
    return {
        "tool": "diagcat",
        "version": VERSION,
        "command": config.command,
        "config": config.echo(),
        "report": body,
    }


def _render_json(config, body):
    return json.dumps(_envelope(config, body), indent=2, sort_keys=True) + "\n"


def _render_csv(rows, columns):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row[c] for c in columns])
    return buf.getvalue()


def _write(config, text):
    if config.out:
        with open(config.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# preset / character resolution

def _bundle(config):
    if not config.preset:
        raise ConfigError("this command needs --preset (one of %s)"
                          % ", ".join(PRESET_NAMES))
    kwargs = {}
    if config.r is not None:
        kwargs["r"] = config.r
    if config.pairs is not None:
        kwargs["pairs"] = config.pairs
    try:
        return preset(config.preset, **kwargs)
    except (PresetError, TypeError) as exc:
        raise ConfigError("preset %r: %s" % (config.preset, exc))


def _resolve_char(config, bundle, need_numeric=False):
    """Bundle character, specialized at --t or --point when given."""
    chi = bundle.char
    if config.point is not None:
        try:
            return bundle.char_at(config.point)
        except (PresetError, CharacterError, ValueError) as exc:
            raise ConfigError("--point %r: %s" % (config.point, exc))
    if config.t not in (None, "generic"):
        if not chi.params:
            raise ConfigError("character of preset %r has no free "
                              "parameter to bind" % bundle.name)
        if len(chi.params) > 1:
            raise ConfigError("character has parameters %s; bind them "
                              "with --point" % (chi.params,))
        try:
            value = Fraction(config.t)
        except ValueError:
            raise ConfigError("--t must be exact (or 'generic'), got %r"
                              % config.t)
        chi = chi.specialize({chi.params[0]: value})
    if need_numeric and chi.params:
        raise ConfigError("this command needs a numeric character; bind "
                          "%s with --t or --point" % (chi.params,))
    return chi


def _load_alpha(config):
    if config.alpha is not None:
        return list(config.alpha)
    if config.alpha_file:
        try:
            with open(config.alpha_file) as fh:
                tokens = []
                for line in fh:
                    line = line.split("#", 1)[0]
                    tokens.extend(line.replace(",", " ").split())
        except OSError as exc:
            raise ConfigError("unreadable alpha file: %s" % exc)
        try:
            return [Fraction(tok) for tok in tokens]
        except ValueError as exc:
            raise ConfigError("bad alpha entry: %s" % exc)
    return None


def _load_signature(path):
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError("unreadable signature file %s: %s" % (path, exc))
    try:
        gens = {name: (int(p), int(q))
                for name, (p, q) in data["generators"].items()}
        return Signature(gens, tuple(data.get("params", ())))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError("signature file needs {'generators': "
                          "{name: [p, q]}}: %s" % exc)


# ---------------------------------------------------------------------------
# commands

def _cmd_gram(config):
    bundle = _bundle(config)
    p, q = config.pq_list[0]
    max_boxes = config.max_boxes
    if max_boxes is None:
        max_boxes = config.cutoffs[-1]
    chi = _resolve_char(config, bundle)
    span = bundle.span_fn(p, q, max_boxes=max_boxes)
    dual = None if p == q else bundle.span_fn(q, p, max_boxes=max_boxes)
    try:
        report = gram_matrix(span, chi, dual)
    except GramError as exc:
        raise ConfigError(str(exc))
    body = {
        "p": p,
        "q": q,
        "character": chi.provenance,
        "spanning": {
            "kind": report.spanning_kind,
            "size": report.size,
            "basis": [_literal(d) for d in report.basis],
        },
        "provenance": {
            "entries": "exact pairing trace_close(x.y) under the %s "
                       "character" % chi.provenance,
            "rank": "fraction-free elimination over the rationals",
        },
    }
    if report.size <= 40:
        body["entries"] = [[_scalar(e) for e in row]
                           for row in report.entries]
    rows = []
    if report.var is None:
        rank, radical = gram_rank_at(report, 0)
        body["rank"] = rank
        body["radical_dim"] = report.size - rank
        if radical:
            body["radical_basis"] = [_literal(z) for z in radical]
        rows.append({"p": p, "q": q, "spanning_kind": report.spanning_kind,
                     "spanning_size": report.size,
                     "t": config.t if config.t not in (None, "generic")
                     else "", "rank": rank})
    else:
        analyze(report)
        probe_points = probe_values(config.seed)
        probe_ranks = [gram_rank_at(report, v)[0] for v in probe_points]
        body["generic_rank"] = report.generic_rank
        body["exceptional_values"] = [[_scalar(v), r]
                                      for v, r in report.exceptional_values]
        body["nonrational_locus"] = report.nonrational_locus
        body["probe"] = {
            "note": "random specializations; agreement certifies the "
                    "generic rank at these points",
            "points": [_scalar(v) for v in probe_points],
            "ranks": probe_ranks,
            "agree": all(r == report.generic_rank for r in probe_ranks),
        }
        if report.radical_basis is not None:
            body["radical_dim"] = report.size - report.generic_rank
        rows.append({"p": p, "q": q, "spanning_kind": report.spanning_kind,
                     "spanning_size": report.size, "t": "generic",
                     "rank": report.generic_rank})
        for value, rank in report.exceptional_values:
            rows.append({"p": p, "q": q,
                         "spanning_kind": report.spanning_kind,
                         "spanning_size": report.size,
                         "t": _scalar(value), "rank": rank})
    if config.fmt == "csv":
        text = _render_csv(rows, ["p", "q", "spanning_kind",
                                  "spanning_size", "t", "rank"])
    else:
        text = _render_json(config, body)
    return EXIT_OK, text


def _cmd_homdims(config):
    bundle = _bundle(config)
    chi = _resolve_char(config, bundle)
    rows = []
    status = EXIT_OK
    notes = []
    for p, q in config.pq_list:
        try:
            dim, evidence = hom_dim(chi, bundle.span_fn, p, q,
                                    cutoffs=tuple(config.cutoffs),
                                    seed=config.seed)
        except EnumerationBudgetError as exc:
            notes.append("(%d, %d): %s" % (p, q, exc))
            status = EXIT_INCONCLUSIVE
            continue
        except GramError as exc:
            raise ConfigError(str(exc))
        rows.append({"p": p, "q": q, "dim": dim,
                     "saturated": evidence["saturated"],
                     "kind": evidence["kind"], "size": evidence["size"],
                     "history": [[c, r] for c, r in evidence["history"]]})
        if not evidence["saturated"]:
            status = EXIT_INCONCLUSIVE
            notes.append("(%d, %d): rank did not stabilize within cutoffs %s"
                         % (p, q, list(config.cutoffs)))
    body = {
        "character": chi.provenance,
        "dims": rows,
        "notes": notes,
        "provenance": {
            "dims": "Gram rank per box cutoff; saturated when two "
                    "successive cutoffs agree (family spans are complete "
                    "by construction)",
        },
    }
    if config.fmt == "csv":
        csv_rows = [{k: row[k] for k in
                     ("p", "q", "dim", "saturated", "kind", "size")}
                    for row in rows]
        text = _render_csv(csv_rows, ["p", "q", "dim", "saturated",
                                      "kind", "size"])
    else:
        text = _render_json(config, body)
    return status, text


def _fit_body(fit):
    body = {
        "series": [_scalar(a) for a in fit.series],
        "surplus": fit.surplus,
        "is_rational": fit.is_rational,
        "good_function": fit.good_function,
        "loyal": fit.loyal,
        "summary": fit.summary(),
    }
    if fit.is_rational:
        body["p"] = [_scalar(c) for c in fit.p]
        body["q"] = [_scalar(c) for c in fit.q]
        body["recurrence"] = [_scalar(c) for c in fit.recurrence]
        body["q_squarefree"] = fit.q_squarefree
        body["deg_p_le_deg_q"] = fit.deg_p_le_deg_q
    return body


def _cmd_goodness(config):
    alpha = _load_alpha(config)
    if alpha is not None:
        if config.preset not in (None, "frobenius"):
            raise ConfigError("--alpha/--alpha-file replace the surface "
                              "series and need the frobenius preset")
        bundle = preset("frobenius")
        chi = char_closed_form("frobenius", alphas=alpha)
    else:
        bundle = _bundle(config)
        chi = _resolve_char(config, bundle, need_numeric=True)
    try:
        report = check_goodness(chi, bundle.span_fn,
                                pq_list=tuple(config.pq_list),
                                cutoffs=tuple(config.cutoffs),
                                N=config.terms, seed=config.seed,
                                samples=config.samples,
                                surplus_required=config.surplus)
    except CharacterError as exc:
        raise ConfigError("character refused the computation: %s" % exc)
    fits = [{"p": entry["p"],
             "endomorphism": _literal(entry["endomorphism"]),
             "fit": _fit_body(entry["fit"])} for entry in report.fits]
    body = {
        "verdict": report.verdict,
        "character": chi.provenance,
        "saturation": report.saturation,
        "fits": fits,
        "notes": report.notes,
        "provenance": {
            "fits": "recurrence fit on exact trace series of length %d, "
                    "surplus requirement %d" % (config.terms,
                                                config.surplus),
        },
    }
    if report.witness is not None:
        body["witness"] = {
            "p": report.witness["p"],
            "endomorphism": _literal(report.witness["endomorphism"]),
            "fit": _fit_body(report.witness["fit"]),
        }
    status = {"pass": EXIT_OK, "fail": EXIT_FAIL,
              "inconclusive": EXIT_INCONCLUSIVE}[report.verdict]
    return status, _render_json(config, body)


def _cmd_chareval(config):
    if config.model_file:
        if not config.signature_file:
            raise ConfigError("--model-file needs --signature-file")
        sig = _load_signature(config.signature_file)
        try:
            chi = char_from_model(load_model(sig, config.model_file))
        except (OSError, ModelError, ValueError) as exc:
            raise ConfigError("model file: %s" % exc)
    else:
        bundle = _bundle(config)
        sig = bundle.signature
        chi = _resolve_char(config, bundle)
    literals = []
    if config.diagram:
        literals.append(config.diagram)
    if config.diagram_file:
        try:
            with open(config.diagram_file) as fh:
                literals.extend(line.strip() for line in fh
                                if line.strip() and not
                                line.lstrip().startswith("#"))
        except OSError as exc:
            raise ConfigError("unreadable diagram file: %s" % exc)
    if not literals:
        raise ConfigError("chareval needs --diagram or --diagram-file")
    values = []
    status = EXIT_OK
    for text in literals:
        try:
            d = parse_diagram(sig, text)
        except (WiringError, ValueError) as exc:
            raise ConfigError("bad diagram literal %r: %s" % (text, exc))
        entry = {"input": text}
        if not d.is_closed():
            if d.p != d.q:
                raise ConfigError("open diagram of arity (%d, %d) cannot "
                                  "be trace-closed" % (d.p, d.q))
            d = d.trace_close()
            entry["closed_by"] = "trace_close"
        entry["canonical"] = format_diagram(d)
        try:
            entry["value"] = _scalar(chi.value(d))
        except CharacterError as exc:
            entry["error"] = str(exc)
            status = EXIT_FAIL
        values.append(entry)
    body = {
        "character": chi.provenance,
        "values": values,
        "provenance": {"values": "exact evaluation under the %s character"
                                 % chi.provenance},
    }
    return status, _render_json(config, body)


def _cmd_simples(config):
    bundle = _bundle(config)
    chi = _resolve_char(config, bundle, need_numeric=True)
    p, q = config.pq_list[0]
    if p != q:
        raise ConfigError("endomorphism algebras need p == q, got (%d, %d)"
                          % (p, q))
    try:
        algebra = quotient_algebra(chi, bundle.span_fn, p,
                                   cutoffs=tuple(config.cutoffs))
    except EnumerationBudgetError as exc:
        return EXIT_INCONCLUSIVE, _render_json(config, {
            "verdict": "inconclusive", "note": str(exc)})
    except EndalgError as exc:
        if "saturated" in str(exc):
            return EXIT_INCONCLUSIVE, _render_json(config, {
                "verdict": "inconclusive", "note": str(exc)})
        raise ConfigError(str(exc))
    semisimple, radical_witness = is_semisimple(algebra)
    body = {
        "p": p,
        "character": chi.provenance,
        "dim": algebra.dim,
        "spanning_size": algebra.spanning_size,
        "saturated": algebra.saturated,
        "warnings": list(algebra.warnings),
        "semisimple": semisimple,
        "simple_count": simple_count(algebra) if semisimple else None,
        "basis": [_literal(b) for b in algebra.basis],
        "traces": [_scalar(tr) for tr in algebra.traces],
        "provenance": {
            "dim": "Gram pivot count over the spanning set",
            "semisimple": "nondegeneracy of the regular trace form",
            "simple_count": "center dimension of the quotient algebra",
        },
    }
    if not semisimple:
        body["radical_witness"] = _literal(radical_witness)
    status = EXIT_OK if algebra.saturated else EXIT_INCONCLUSIVE
    return status, _render_json(config, body)


def _cmd_loyal(config):
    alpha = _load_alpha(config)
    if alpha is None:
        raise ConfigError("loyal needs --alpha or --alpha-file")
    result = check_loyal(alpha, surplus_required=config.surplus)
    body = {
        "verdict": result["verdict"],
        "loyal": result["loyal"],
        "fit": _fit_body(result["fit"]),
        "provenance": {"fit": "recurrence fit with surplus requirement %d"
                              % config.surplus},
    }
    status = EXIT_OK if result["loyal"] else EXIT_FAIL
    return status, _render_json(config, body)


def _cmd_interpolate(config):
    bundle = _bundle(config)
    points = config.points
    if points is None:
        points = tuple(pt for pt in bundle.special_collection
                       if isinstance(pt, int))
    if not points:
        raise ConfigError("preset %r has no integer model points; pass "
                          "--points" % bundle.name)
    try:
        models = [(n, bundle.model_at(n)) for n in points]
    except (PresetError, ModelError, TypeError, ValueError) as exc:
        raise ConfigError("preset %r cannot build models at %s: %s"
                          % (bundle.name, list(points), exc))
    var = bundle.params[0] if bundle.params else "t"
    try:
        interpolated = interpolate_family(models, var=var)
    except ConsistencyError as exc:
        return EXIT_FAIL, _render_json(config, {
            "verdict": "fail", "witness": str(exc)})
    samples = sample_closed_diagrams(bundle.span_fn, seed=config.seed,
                                     count=config.count,
                                     pq_list=tuple(config.pq_list))
    comparisons = []
    mismatches = 0
    for d in samples:
        try:
            got = interpolated.value(d)
            want = bundle.char.value(d)
        except (CharacterError, ConsistencyError) as exc:
            return EXIT_FAIL, _render_json(config, {
                "verdict": "fail", "witness": str(exc),
                "diagram": _literal(d)})
        agree = got == want
        if not agree:
            mismatches += 1
        comparisons.append({"diagram": _literal(d), "interpolated":
                            _scalar(got), "reference": _scalar(want),
                            "agree": agree})
    body = {
        "verdict": "pass" if mismatches == 0 else "fail",
        "var": var,
        "points": list(points),
        "reference": bundle.char.provenance,
        "sampled": len(samples),
        "mismatches": mismatches,
        "comparisons": comparisons,
        "provenance": {
            "interpolated": "degree-bounded interpolation through the "
                            "model points, surplus points as witnesses",
        },
    }
    status = EXIT_OK if mismatches == 0 else EXIT_FAIL
    return status, _render_json(config, body)


def _cmd_presets(config):
    if config.action != "list":
        raise ConfigError("presets supports the 'list' action")
    body = {"presets": [preset(name).summary() for name in PRESET_NAMES]}
    return EXIT_OK, _render_json(config, body)


_COMMANDS = {
    "gram": _cmd_gram,
    "homdims": _cmd_homdims,
    "goodness": _cmd_goodness,
    "chareval": _cmd_chareval,
    "simples": _cmd_simples,
    "loyal": _cmd_loyal,
    "interpolate": _cmd_interpolate,
    "presets": _cmd_presets,
}

_CSV_COMMANDS = {"gram", "homdims"}


def run(config):
    """Dispatch one command; returns the exit status after writing the
    report."""
    if config.command not in _COMMANDS:
        raise ConfigError("unknown command %r" % config.command)
    if config.fmt == "csv" and config.command not in _CSV_COMMANDS:
        raise ConfigError("csv output is defined for %s only"
                          % ", ".join(sorted(_CSV_COMMANDS)))
    for c in config.cutoffs:
        if c <= 0:
            raise ConfigError("cutoffs must be positive, got %s"
                              % (list(config.cutoffs),))
    try:
        status, text = _COMMANDS[config.command](config)
    except CharacterError as exc:
        # partial characters refuse diagrams outside their domain; the
        # refusal carries the offending diagram as witness
        text = _render_json(config, {"verdict": "fail",
                                     "witness": str(exc)})
        status = EXIT_FAIL
    _write(config, text)
    return status


# ---------------------------------------------------------------------------
# argument surface

def _add_common(sp, *names):
    sp.add_argument("--config", help="JSON config file; flags override")
    sp.add_argument("--seed", type=int)
    sp.add_argument("--out", help="write the report here instead of stdout")
    if "fmt" in names:
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"))
    if "preset" in names:
        sp.add_argument("--preset", choices=PRESET_NAMES)
        sp.add_argument("--r", type=int, help="dvr length parameter")
        sp.add_argument("--pairs", help="endo eigenvalue pairs l1,w1;l2,w2")
    if "t" in names:
        sp.add_argument("--t", help="parameter value, or 'generic'")
        sp.add_argument("--point", help="multi-parameter point q:a1,...,ar")
    if "cutoffs" in names:
        sp.add_argument("--cutoffs", help="box cutoffs, e.g. 2,3,4")
    if "alpha" in names:
        sp.add_argument("--alpha", help="comma-separated exact series")
        sp.add_argument("--alpha-file", dest="alpha_file")


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad flags; 2 is reserved for
    fail-with-witness, so argument problems become config errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise ConfigError(message)


def _parser():
    parser = _Parser(
        prog="diagcat",
        description="exact hom-space, trace-character and Gram-radical "
                    "reports for diagrammatic interpolation families")
    parser.add_argument("--version", action="version", version=VERSION)
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("gram", help="Gram matrix, generic rank, "
                                     "exceptional parameter values")
    _add_common(sp, "fmt", "preset", "t")
    sp.add_argument("--pq", dest="pq_list",
                    type=lambda s: (_norm_pair(s, "--pq"),))
    sp.add_argument("--max-boxes", dest="max_boxes", type=int)

    sp = sub.add_parser("homdims", help="hom-space dimensions with "
                                        "saturation evidence")
    _add_common(sp, "fmt", "preset", "t", "cutoffs")
    sp.add_argument("--pq-list", dest="pq_list",
                    help="semicolon-separated pairs, e.g. 1,1;2,2")

    sp = sub.add_parser("goodness", help="trace-series rationality audit "
                                         "of a numeric character")
    _add_common(sp, "preset", "t", "cutoffs", "alpha")
    sp.add_argument("--pq-list", dest="pq_list")
    sp.add_argument("--terms", type=int, help="trace series length")
    sp.add_argument("--samples", type=int,
                    help="random endomorphisms per hom space")
    sp.add_argument("--surplus", type=int)

    sp = sub.add_parser("chareval", help="evaluate a character on closed "
                                         "diagram literals")
    _add_common(sp, "preset", "t")
    sp.add_argument("--diagram", help="diagram literal")
    sp.add_argument("--diagram-file", dest="diagram_file",
                    help="file of diagram literals, one per line")
    sp.add_argument("--model-file", dest="model_file")
    sp.add_argument("--signature-file", dest="signature_file")

    sp = sub.add_parser("simples", help="quotient algebra: dimension, "
                                        "semisimplicity, simple count")
    _add_common(sp, "preset", "t", "cutoffs")
    sp.add_argument("--pq", dest="pq_list",
                    type=lambda s: (_norm_pair(s, "--pq"),))

    sp = sub.add_parser("loyal", help="classify an exact series as a "
                                      "loyal rational function")
    _add_common(sp, "alpha")
    sp.add_argument("--surplus", type=int)

    sp = sub.add_parser("interpolate", help="interpolate a character "
                                            "through model points and "
                                            "compare on sampled diagrams")
    _add_common(sp, "preset")
    sp.add_argument("--points", help="model points, e.g. 2,4,6")
    sp.add_argument("--pq-list", dest="pq_list")
    sp.add_argument("--count", type=int, help="sampled closed diagrams")

    sp = sub.add_parser("presets", help="list the bundled families")
    _add_common(sp)
    sp.add_argument("action", choices=("list",))
    return parser


def main(argv=None):
    try:
        args = _parser().parse_args(argv)
        config = build_config(args)
        return run(config)
    except ConfigError as exc:
        sys.stderr.write("diagcat: %s\n" % exc)
        return EXIT_CONFIG


if __name__ == "__main__":
    raise SystemExit(main())
