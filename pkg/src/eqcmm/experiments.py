"""Load sweeps comparing plain, orthonormalized and pseudoinverse memories.

For every load ``q`` and trial the runner draws keys and memorized vectors,
builds each requested memory, recalls every stored pair, and aggregates the
recall error per ``(q, method)`` into an :class:`ExperimentReport`.
"""
import csv
import enum
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .eqcmm import fit, recall_raw, recall_x, recall_z
from .ensembles import EnsembleKind, EnsembleSpec, Seed, coherence, generate, haar_state
from .errors import DomainError, EqcmmError
from .qcmm import capacity_check, crosstalk_noise, make_pairs, recall, train_batch
from .qop import DEFAULT_TOL, GSMode, gram_schmidt

CSV_HEADER = ["m", "q", "method", "mean_err", "max_err", "mean_cos", "mean_noise", "coherence", "rank", "wall_ms"]
PLOT_FLOOR = 1e-16


class Method(enum.Enum):
    QCMM = "QCMM"
    EQCMM_X = "EQCMM_X"
    EQCMM_Z = "EQCMM_Z"
    EQCMM_RAW = "EQCMM_RAW"
    PINV_ORACLE = "PINV_ORACLE"


@dataclass
class SweepConfig:
    dim: int
    q_values: list
    ensemble: EnsembleKind = EnsembleKind.HAAR
    trials: int = 10
    seed: int = 0
    tol: float = DEFAULT_TOL
    methods: tuple = tuple(Method)
    stimulus_noise_eps: float = 0.0
    ensemble_noise_eps: float = 0.0
    memorized: EnsembleKind = EnsembleKind.HAAR
    gs_mode: GSMode = GSMode.MODIFIED
    orthonormalize_keys: bool = False
    timing: bool = True

    def __post_init__(self):
        self.ensemble = EnsembleKind(self.ensemble)
        self.memorized = EnsembleKind(self.memorized)
        self.gs_mode = GSMode(self.gs_mode)
        self.methods = tuple(Method(mth) for mth in self.methods)
        self.q_values = [int(q) for q in self.q_values]
        if not self.q_values or min(self.q_values) < 1:
            raise DomainError("q_values must be a non-empty list of positive integers")
        if self.trials < 1 or self.dim < 1:
            raise DomainError("dim and trials must be positive")
        if not self.methods:
            raise DomainError("no methods selected")
        if self.stimulus_noise_eps < 0 or self.ensemble_noise_eps < 0:
            raise DomainError("noise levels must be >= 0")

    @classmethod
    def from_dict(cls, d):
        known = set(cls.__dataclass_fields__)
        unknown = set(d) - known
        if unknown:
            raise DomainError(f"unknown sweep config fields: {sorted(unknown)}")
        return cls(**d)

    def to_dict(self):
        d = asdict(self)
        for key in ("ensemble", "memorized", "gs_mode"):
            d[key] = d[key].value
        d["methods"] = [mth.value for mth in self.methods]
        return d


@dataclass
class ReportRow:
    m: int
    q: int
    method: str
    mean_err: float
    max_err: float
    mean_cos: float
    mean_noise: float
    coherence: float
    rank: int
    wall_ms: float
    verdict: str = ""
    note: str = ""


@dataclass
class ExperimentReport:
    rows: list = field(default_factory=list)

    def row(self, q, method):
        method = Method(method).value
        for r in self.rows:
            if r.q == q and r.method == method:
                return r
        raise KeyError((q, method))


def _abs_cosines(R, Y):
    num = np.abs(np.sum(R.conj() * Y, axis=0))
    den = np.linalg.norm(R, axis=0) * np.linalg.norm(Y, axis=0)
    with np.errstate(invalid="ignore", divide="ignore"):
        cos = np.where(den > 0, num / np.where(den > 0, den, 1.0), 0.0)
    return cos


def _perturb_columns(S, eps, seed, label):
    if eps == 0:
        return S
    out = np.empty_like(S)
    for j in range(S.shape[1]):
        v = S[:, j] + eps * haar_state(seed.rng(label, j), S.shape[0])
        out[:, j] = v / np.linalg.norm(v)
    return out


def _run_trial(cfg, q, t, seed):
    """Per-method (errors, cosines, noise norms, wall seconds) for one trial, plus rank and coherence."""
    m = cfg.dim
    tag = f"q{q}/t{t}"
    X = np.stack(generate(EnsembleSpec(cfg.ensemble, m, q, cfg.ensemble_noise_eps), seed, "keys/" + tag), axis=1)
    Y = np.stack(generate(EnsembleSpec(cfg.memorized, m, q), seed, "memorized/" + tag), axis=1)
    if cfg.orthonormalize_keys:
        f0 = gram_schmidt(X, mode=cfg.gs_mode, tol=cfg.tol)
        if f0.rank != q:
            raise DomainError("orthonormalize_keys needs a full-rank key set")
        X = f0.Z
    S = _perturb_columns(X, cfg.stimulus_noise_eps, seed, "stimulus/" + tag)
    pairs = make_pairs(X, Y)
    coh = coherence(X) if q >= 2 else 0.0

    t0 = time.perf_counter()
    model = fit(pairs, mode=cfg.gs_mode, tol=cfg.tol)
    fit_time = time.perf_counter() - t0
    rank = model.factors.rank

    out = {}
    for method in cfg.methods:
        t0 = time.perf_counter()
        if method is Method.QCMM:
            mem = train_batch(pairs)
            resp = recall(mem, S)
            noise = np.linalg.norm(crosstalk_noise(X, Y), axis=0)
        elif method is Method.PINV_ORACLE:
            P = Y @ np.linalg.pinv(X)
            resp = P @ S
            noise = np.linalg.norm(P @ X - Y, axis=0)
        elif method is Method.EQCMM_Z:
            # a dropped pair has no basis vector to address it: zero response
            Zs = _perturb_columns(model.factors.Z, cfg.stimulus_noise_eps, seed, "stimulus-z/" + tag)
            resp = np.zeros_like(Y)
            clean = np.zeros_like(Y)
            for k, col in enumerate(model.key_index):
                if col is not None:
                    resp[:, k] = recall_z(model, Zs[:, col])
                    clean[:, k] = recall_z(model, model.factors.Z[:, col])
            noise = np.linalg.norm(clean - Y, axis=0)
        else:
            fn = recall_x if method is Method.EQCMM_X else recall_raw
            resp = fn(model, S)
            clean = resp if S is X else fn(model, X)
            noise = np.linalg.norm(clean - Y, axis=0)
        elapsed = time.perf_counter() - t0
        if method in (Method.EQCMM_X, Method.EQCMM_Z, Method.EQCMM_RAW):
            elapsed += fit_time
        err = np.linalg.norm(resp - Y, axis=0)
        out[method] = (err, _abs_cosines(resp, Y), noise, elapsed)
    return out, rank, coh


def run_sweep(config):
    """Run every ``(q, trial)`` cell of `config` and aggregate one row per ``(q, method)``.

    Trials whose key set cannot be processed are counted in the row's
    ``note`` instead of aborting the sweep.  A row is flagged
    ``RankDeficient`` when ``q > m`` or any trial's keys were dependent.
    """
    cfg = config if isinstance(config, SweepConfig) else SweepConfig.from_dict(config)
    seed = Seed(cfg.seed)
    report = ExperimentReport()
    for q in cfg.q_values:
        acc = {mth: ([], [], [], 0.0) for mth in cfg.methods}
        ranks, cohs, failures = [], [], []
        for t in range(cfg.trials):
            try:
                res, rank, coh = _run_trial(cfg, q, t, seed)
            except EqcmmError as exc:
                failures.append(f"trial {t}: {exc}")
                continue
            ranks.append(rank)
            cohs.append(coh)
            for mth, (err, cos, noise, secs) in res.items():
                e, c, n, w = acc[mth]
                e.append(err)
                c.append(cos)
                n.append(noise)
                acc[mth] = (e, c, n, w + secs)
        rank = min(ranks) if ranks else 0
        verdict = capacity_check(cfg.dim, q, rank).status.value
        note = "; ".join(failures)
        for mth in cfg.methods:
            e, c, n, w = acc[mth]
            if e:
                e, c, n = np.concatenate(e), np.concatenate(c), np.concatenate(n)
                stats = (float(e.mean()), float(e.max()), float(c.mean()), float(n.mean()))
            else:
                stats = (math.nan,) * 4
            report.rows.append(ReportRow(
                m=cfg.dim, q=q, method=mth.value,
                mean_err=stats[0], max_err=stats[1], mean_cos=stats[2], mean_noise=stats[3],
                coherence=float(np.mean(cohs)) if cohs else math.nan,
                rank=rank,
                wall_ms=1000.0 * w if cfg.timing else 0.0,
                verdict=verdict, note=note,
            ))
    return report


def _fmt(x):
    return f"{x:.9g}"


def emit_csv(report, path):
    """Write `report` as CSV (header plus one line per row, reals to 9 significant digits)."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for r in report.rows:
            w.writerow([r.m, r.q, r.method, _fmt(r.mean_err), _fmt(r.max_err), _fmt(r.mean_cos),
                        _fmt(r.mean_noise), _fmt(r.coherence), r.rank, _fmt(r.wall_ms)])


def read_csv(path):
    """Parse a file written by :func:`emit_csv`; verdicts are recomputed from m, q and rank."""
    report = ExperimentReport()
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if header != CSV_HEADER:
            raise DomainError(f"unexpected CSV header {header}")
        for rec in reader:
            m, q, rank = int(rec[0]), int(rec[1]), int(rec[8])
            report.rows.append(ReportRow(
                m=m, q=q, method=rec[2],
                mean_err=float(rec[3]), max_err=float(rec[4]), mean_cos=float(rec[5]),
                mean_noise=float(rec[6]), coherence=float(rec[7]), rank=rank, wall_ms=float(rec[9]),
                verdict=capacity_check(m, q, rank).status.value,
            ))
    return report


_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"]


def emit_plot(report, path, width=640, height=420):
    """Write an SVG of mean recall error against load ``q/m``, one polyline per method.

    Errors below 1e-16 (including exact zeros) are clamped to 1e-16 before
    taking the log.
    """
    methods = []
    for r in report.rows:
        if r.method not in methods:
            methods.append(r.method)
    series = {}
    for mth in methods:
        pts = [(r.q / r.m, math.log10(max(r.mean_err, PLOT_FLOOR)))
               for r in report.rows if r.method == mth and not math.isnan(r.mean_err)]
        series[mth] = sorted(pts)
    xs = [p[0] for pts in series.values() for p in pts] or [0.0, 1.0]
    ys = [p[1] for pts in series.values() for p in pts] or [-16.0, 0.0]
    x0, x1 = 0.0, max(xs) * 1.05 if max(xs) > 0 else 1.0
    y0, y1 = math.floor(min(ys)), math.ceil(max(ys))
    if y1 == y0:
        y1 = y0 + 1
    left, right, top, bottom = 70, 150, 20, 50
    pw, ph = width - left - right, height - top - bottom

    def sx(x):
        return left + pw * (x - x0) / (x1 - x0)

    def sy(y):
        return top + ph * (1.0 - (y - y0) / (y1 - y0))

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{left}" y1="{top + ph}" x2="{left + pw}" y2="{top + ph}" stroke="black"/>',
        f'<line x1="{left}" y1="{top}" x2="{left}" y2="{top + ph}" stroke="black"/>',
    ]
    step = max(1, (y1 - y0) // 8)
    for e in range(y0, y1 + 1, step):
        y = sy(e)
        out.append(f'<line x1="{left - 4}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{y + 4:.2f}" font-size="11" text-anchor="end">1e{e}</text>')
    for i in range(6):
        x = x0 + (x1 - x0) * i / 5
        out.append(f'<line x1="{sx(x):.2f}" y1="{top + ph}" x2="{sx(x):.2f}" y2="{top + ph + 4}" stroke="black"/>')
        out.append(f'<text x="{sx(x):.2f}" y="{top + ph + 17}" font-size="11" text-anchor="middle">{x:.2f}</text>')
    out.append(f'<text x="{left + pw / 2:.2f}" y="{height - 10}" font-size="12" text-anchor="middle">load q/m</text>')
    out.append(f'<text x="16" y="{top + ph / 2:.2f}" font-size="12" text-anchor="middle" '
               f'transform="rotate(-90 16 {top + ph / 2:.2f})">mean recall error</text>')
    for i, mth in enumerate(methods):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in series[mth])
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        ly = top + 14 + 18 * i
        out.append(f'<line x1="{left + pw + 10}" y1="{ly}" x2="{left + pw + 30}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{left + pw + 35}" y="{ly + 4}" font-size="11">{mth}</text>')
    out.append("</svg>")
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(out) + "\n")
