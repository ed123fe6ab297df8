"""Command-line driver.

    landau-factor {verify,evolve,phase-loop,sweep-epsilon,track-center} --config run.yaml \
        [--out DIR] [--set key=value ...]

Each run writes ``<out>/<config-hash>/summary.json`` plus a series file
(``series.csv`` by default).  Exit status: 0 all checks pass, 1 a numerical
check failed, 2 the configuration is invalid.

Series columns by command:

* verify: ``check, residual, tolerance, passed``
* evolve: ``t, norm, leakage, x1, x2, p_0 ... p_{K-1}``
* phase-loop: ``epsilon, t_final, beta_re, beta_im, beta_flux, phi_k, loop_area_d``
* sweep-epsilon: ``n_initial, epsilon, total_out, leakage, alpha_re, alpha_im, p_0 ... p_{K-1}``
* track-center: ``t, x1, x2[, x1_oracle, x2_oracle]``

``K`` is the number of interior cyclotron levels; ``p_n`` are summed over the
guiding-centre level.
"""

from __future__ import annotations

import argparse
import copy
import csv
import dataclasses
import hashlib
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from . import analysis
from .drive_path import DrivePath, path_from_spec
from .errors import ConfigurationError, ContractError, LandauFactorError
from .fock_algebra import (
    OperatorMatrix,
    StateVector,
    Truncation,
    apply,
    basis_state,
    coherent_amplitudes,
    commutator,
    expectation,
    interior_distance,
    product_state,
    restrict,
    unitarity_defect,
)
from .landau_model import ModelOperators, PhysicalParams, build_model, hamiltonian_builder
from .propagator_factorization import (
    assemble,
    factor_order_defect,
    path_ordered_phase_heisenberg,
)
from .reference_integrator import IntegratorConfig, propagate_reference

COMMANDS = ("verify", "evolve", "phase-loop", "sweep-epsilon", "track-center")

EXIT_OK, EXIT_CHECK_FAILED, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class Tolerances:
    algebra: float = 1e-10
    unitarity: float = 1e-10
    factor_order: float = 1e-8
    heisenberg: float = 1e-7
    displacement: float = 1e-8
    oracle: float = 1e-6
    gauge: float = 1e-9
    phase: float = 1e-6
    phase_invariance: float = 1e-8
    bookkeeping: float = 1e-8
    slope: float = 0.1


@dataclass(frozen=True)
class IntegratorSection:
    dt: float = 1e-2
    order: int = 4
    pad: int = 8
    richardson: bool = False


@dataclass(frozen=True)
class StudySection:
    #: evolve / track-center initial state: ``basis`` (n, m) or ``coherent`` (alpha in mode A, level m in B)
    initial: str = "basis"
    n: int = 0
    m: int = 0
    alpha: tuple = (0.0, 0.0)
    #: evaluation times for evolve / track-center; ``t_final`` defaults to the path's end
    t_final: float | None = None
    samples: int = 11
    oracle: bool = False
    epsilons: tuple = (0.1, 0.05, 0.025, 0.0125)
    levels: tuple = (0,)
    slope_target: float = 2.0


@dataclass(frozen=True)
class RunConfig:
    units: dict = field(default_factory=lambda: {"system": "natural"})
    truncation: dict = field(default_factory=lambda: {"na": 48, "nb": 48, "buffer": 12})
    path: dict = field(
        default_factory=lambda: {
            "kind": "circle",
            "center": [1.0, 0.0],
            "radius": 1.0,
            "rate": 1.0,
            "start_angle": math.pi,
            "turns": 1.0,
            "epsilon": 0.1,
        }
    )
    r0: tuple = (0.0, 0.0)
    integrator: IntegratorSection = IntegratorSection()
    study: StudySection = StudySection()
    tolerances: Tolerances = Tolerances()
    output: dict = field(default_factory=lambda: {"dir": "runs", "format": "csv"})
    workers: int = 1

    # -- (de)serialisation ---------------------------------------------
    def to_dict(self) -> dict:
        return _plain(dataclasses.asdict(self))

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        if not isinstance(data, dict):
            raise ConfigurationError("config must be a mapping")
        data = copy.deepcopy(data)
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"unknown config sections: {sorted(unknown)}")
        kw = {}
        for name, sub in (("integrator", IntegratorSection), ("study", StudySection), ("tolerances", Tolerances)):
            if name in data:
                kw[name] = _section(sub, data.pop(name), name)
        if "study" in kw:
            st = kw["study"]
            kw["study"] = dataclasses.replace(
                st, alpha=tuple(st.alpha), epsilons=tuple(st.epsilons), levels=tuple(st.levels)
            )
        if "r0" in data:
            data["r0"] = tuple(data["r0"])
        cfg = cls(**data, **kw)
        cfg.validate()
        return cfg

    def to_yaml(self) -> str:
        return yaml.safe_dump(self.to_dict(), sort_keys=True)

    @classmethod
    def from_yaml(cls, text: str) -> "RunConfig":
        try:
            data = yaml.safe_load(text)
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"cannot parse config: {exc}") from None
        return cls.from_dict(data or {})

    def digest(self, command: str) -> str:
        """Short hash of the command plus every setting except the output location."""
        d = self.to_dict()
        d.pop("output")
        d.pop("workers")
        blob = json.dumps({"command": command, "config": d}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    # -- derived objects -------------------------------------------------
    def params(self) -> PhysicalParams:
        u = dict(self.units)
        system = u.pop("system", "natural")
        if system == "natural":
            if u:
                raise ConfigurationError(f"natural units take no parameters, got {sorted(u)}")
            return PhysicalParams.natural()
        if system == "explicit":
            unknown = set(u) - {"q", "B", "m", "c", "hbar"}
            if unknown:
                raise ConfigurationError(f"unknown unit parameters {sorted(unknown)}")
            return PhysicalParams(**{k: float(v) for k, v in u.items()})
        raise ConfigurationError(f"units.system must be 'natural' or 'explicit', got {system!r}")

    def trunc(self) -> Truncation:
        unknown = set(self.truncation) - {"na", "nb", "buffer"}
        if unknown:
            raise ConfigurationError(f"unknown truncation keys {sorted(unknown)}")
        return Truncation(**self.truncation)

    def drive(self) -> DrivePath:
        return path_from_spec(self.path)

    def model(self) -> ModelOperators:
        return build_model(self.params(), self.r0, self.trunc())

    def validate(self):
        self.params()
        self.trunc()
        path = self.drive()
        for f in dataclasses.fields(self.tolerances):
            v = getattr(self.tolerances, f.name)
            if not (isinstance(v, (int, float)) and v > 0):
                raise ConfigurationError(f"tolerance {f.name} must be positive, got {v!r}")
        it = self.integrator
        if not (it.dt > 0) or it.order not in (2, 4) or it.pad < 0:
            raise ConfigurationError("integrator needs dt > 0, order in {2, 4} and pad >= 0")
        st = self.study
        if st.t_final is not None and not (0 < st.t_final <= path.t_final * (1 + 1e-12)):
            raise ConfigurationError(f"study.t_final={st.t_final} outside the path domain (0, {path.t_final}]")
        if st.samples < 2:
            raise ConfigurationError("study.samples must be >= 2")
        if st.initial not in ("basis", "coherent"):
            raise ConfigurationError(f"study.initial must be 'basis' or 'coherent', got {st.initial!r}")
        if not st.epsilons or any(not (e > 0) for e in st.epsilons):
            raise ConfigurationError("study.epsilons must be positive")
        if self.output.get("format", "csv") not in ("csv", "json"):
            raise ConfigurationError("output.format must be 'csv' or 'json'")
        if not (isinstance(self.workers, int) and self.workers >= 1):
            raise ConfigurationError("workers must be a positive integer")
        if len(self.r0) != 2:
            raise ConfigurationError("r0 must have two components")


def _section(cls, data, name):
    if not isinstance(data, dict):
        raise ConfigurationError(f"section {name!r} must be a mapping")
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - known
    if unknown:
        raise ConfigurationError(f"unknown keys in {name!r}: {sorted(unknown)}")
    try:
        return cls(**data)
    except TypeError as exc:
        raise ConfigurationError(str(exc)) from None


def _plain(x):
    """Nested structure of dicts, lists, str, int and float (YAML / JSON safe)."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (complex, np.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating,)):
        return float(x)
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    return x


def apply_overrides(data: dict, overrides) -> dict:
    """``key.sub=value`` assignments; values are parsed as YAML scalars / lists."""
    data = copy.deepcopy(data)
    for item in overrides or ():
        if "=" not in item:
            raise ConfigurationError(f"override {item!r} is not key=value")
        key, raw = item.split("=", 1)
        try:
            value = yaml.safe_load(raw)
        except yaml.YAMLError as exc:
            raise ConfigurationError(f"cannot parse override {item!r}: {exc}") from None
        node = data
        parts = key.strip().split(".")
        for p in parts[:-1]:
            nxt = node.setdefault(p, {})
            if not isinstance(nxt, dict):
                raise ConfigurationError(f"override {key!r} descends into a non-mapping")
            node = nxt
        node[parts[-1]] = value
    return data


def load_config(path, overrides=()) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config {path}: {exc}") from None
    try:
        data = yaml.safe_load(text) or {}
    except yaml.YAMLError as exc:
        raise ConfigurationError(f"cannot parse config: {exc}") from None
    if not isinstance(data, dict):
        raise ConfigurationError("config must be a mapping")
    base = RunConfig().to_dict()
    merged = _merge(base, data)
    return RunConfig.from_dict(apply_overrides(merged, overrides))


def _merge(base: dict, top: dict) -> dict:
    out = dict(base)
    for k, v in top.items():
        # path and units are replaced wholesale so stale keys of another kind do not leak in
        if k in ("path", "units") or not isinstance(v, dict) or not isinstance(out.get(k), dict):
            out[k] = v
        else:
            out[k] = _merge(out[k], v)
    return out


# -- checks ----------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual) and self.residual <= self.tolerance)

    def row(self) -> dict:
        return {"check": self.name, "residual": self.residual, "tolerance": self.tolerance, "passed": self.passed}


def _scalar(model: ModelOperators, z: complex, unit) -> OperatorMatrix:
    return OperatorMatrix.identity(model.trunc).scaled(z, unit)


def _reference_u(model, path, t, cfg: RunConfig):
    it = cfg.integrator
    big = model.with_trunc(model.trunc.padded(it.pad))
    ic = IntegratorConfig(
        dt=min(it.dt, t), t_final=t, order=it.order, richardson=it.richardson, breakpoints=path.breakpoints()
    )
    res = propagate_reference(hamiltonian_builder(big, path), ic, hbar=model.params.hbar)
    return restrict(res.u_ref, model.trunc), res.error_estimate


def _initial_state(cfg: RunConfig, model: ModelOperators) -> StateVector:
    st, tr = cfg.study, model.trunc
    if st.initial == "basis":
        if not (0 <= st.n < tr.interior_a and 0 <= st.m < tr.interior_b):
            raise ConfigurationError(f"initial level ({st.n}, {st.m}) outside the interior")
        return basis_state(st.n, st.m, tr)
    psi_a = coherent_amplitudes(complex(*st.alpha), tr.na)
    psi_b = np.zeros(tr.nb, complex)
    psi_b[st.m] = 1.0
    psi = product_state(psi_a, psi_b, tr)
    if abs(psi.interior_weight() - 1) > 1e-10:
        raise ConfigurationError("coherent initial state is not supported by the interior")
    return psi.normalized()


def run_verify(cfg: RunConfig):
    tol = cfg.tolerances
    model = cfg.model()
    path = cfg.drive()
    p = model.params
    hk = p.hbar * p.kappa
    mom2 = model.pi1.unit * model.pi1.unit
    checks = [
        Check("commutator_pi1_pi2", interior_distance(commutator(model.pi1, model.pi2), _scalar(model, 1j * hk, mom2)) / hk, tol.algebra),
        Check("commutator_eta1_eta2", interior_distance(commutator(model.eta1, model.eta2), _scalar(model, -1j * hk, mom2)) / hk, tol.algebra),
    ]
    # the mixed products stay factored; forming the commutator would go dense
    mixed = max(
        interior_distance(a @ b, b @ a) for a in (model.pi1, model.pi2) for b in (model.eta1, model.eta2)
    )
    checks.append(Check("commutator_pi_eta", mixed / hk, tol.algebra))
    ia = model.trunc.interior_a
    levels = np.linalg.eigvalsh(model.h0_from_momenta.mode_factor("A")[:ia, :ia])
    spec_err = float(np.max(np.abs(levels - p.hbar * p.omega * (np.arange(ia) + 0.5))))
    checks.append(Check("h0_spectrum", spec_err / (p.hbar * p.omega), tol.algebra))

    t = path.t_final
    bundle = assemble(model, path, t)
    for name, op in (("D", bundle.d_factor), ("K", bundle.k_factor), ("M", bundle.m_factor), ("gauge", bundle.gauge_factor)):
        checks.append(Check(f"unitarity_{name}", unitarity_defect(op), tol.unitarity))
    checks.append(Check("factor_order", factor_order_defect(bundle), tol.factor_order))
    hz = analysis.heisenberg_check(bundle, model)
    scale = math.sqrt(hk)
    checks.append(Check("heisenberg_pi", hz.pi / scale, tol.heisenberg))
    checks.append(Check("heisenberg_eta", max(hz.eta1, hz.eta2) / scale, tol.heisenberg))
    dz = analysis.displacement_check(bundle, model)
    checks.append(Check("displacement_K", dz.pi / scale, tol.displacement))
    checks.append(Check("displacement_M", max(dz.eta1, dz.eta2) / scale, tol.displacement))
    u_ref, _ = _reference_u(model, path, t, cfg)
    checks.append(Check("oracle_U", interior_distance(u_ref, bundle.u), tol.oracle))
    if path.is_closed:
        checks.append(Check("closed_loop_gauge", analysis.closed_loop_gauge_defect(bundle), tol.gauge))
    rows = [c.row() for c in checks]
    summary = {
        "checks": rows,
        "alpha_tilde": bundle.alpha_tilde,
        "beta": bundle.beta_phase,
        "phi_k": bundle.phi_k_phase,
        "t_final": t,
    }
    return summary, rows, checks


def run_evolve(cfg: RunConfig):
    model, path = cfg.model(), cfg.drive()
    st = cfg.study
    psi0 = _initial_state(cfg, model)
    t_end = path.t_final if st.t_final is None else st.t_final
    times = np.linspace(0.0, t_end, st.samples)
    rows = []
    ia, ib = model.trunc.interior_a, model.trunc.interior_b
    for t in times:
        psi = apply(assemble(model, path, float(t)).u, psi0)
        w = np.abs(psi.as_grid()) ** 2
        pops = w[:ia, :ib].sum(axis=1)
        row = {
            "t": float(t),
            "norm": psi.norm,
            "leakage": float(w.sum() - pops.sum()),
            "x1": expectation(model.x1, psi).real + model.r0[0],
            "x2": expectation(model.x2, psi).real + model.r0[1],
        }
        row.update({f"p_{n}": float(v) for n, v in enumerate(pops)})
        rows.append(row)
    bundle = assemble(model, path, float(t_end))
    psi_end = apply(bundle.u, psi0)
    free = apply(bundle.d_factor, psi0)
    summary = {
        "t_final": float(t_end),
        "alpha_tilde": bundle.alpha_tilde,
        "final_norm": psi_end.norm,
        # distance from pure dynamical evolution D(t)|initial>
        "free_evolution_residual": float(np.linalg.norm(psi_end.amplitudes - free.amplitudes)),
    }
    checks = [Check("final_norm", abs(psi_end.norm - 1.0), cfg.tolerances.unitarity)]
    if st.oracle:
        u_ref, _ = _reference_u(model, path, float(t_end), cfg)
        res = float(np.linalg.norm(apply(u_ref, psi0).amplitudes - psi_end.amplitudes))
        summary["oracle_residual"] = res
        checks.append(Check("oracle_state", res, cfg.tolerances.oracle))
    summary["checks"] = [c.row() for c in checks]
    return summary, rows, checks


def run_phase_loop(cfg: RunConfig):
    model, path = cfg.model(), cfg.drive()
    tol = cfg.tolerances
    eps = sorted(set(float(e) for e in cfg.study.epsilons) | {path.epsilon})
    reports = [analysis.geometric_phase_closed_loop(path, model, e) for e in eps]
    rows = [
        {
            "epsilon": r.epsilon,
            "t_final": r.t_final,
            "beta_re": r.beta_geometric,
            "beta_im": 0.0,
            "beta_flux": r.beta_flux,
            "phi_k": r.phi_k,
            "loop_area_d": r.loop_area_d,
        }
        for r in reports
    ]
    main = next(r for r in reports if r.epsilon == path.epsilon)
    oracle = path_ordered_phase_heisenberg(path, model.params)
    spread = max(r.beta_geometric for r in reports) - min(r.beta_geometric for r in reports)
    checks = [
        Check("beta_vs_flux", abs(main.beta_geometric - main.beta_flux), tol.phase),
        Check("beta_vs_ordered_product", abs(main.beta_geometric - oracle), tol.phase),
        Check("beta_epsilon_invariance", spread, tol.phase_invariance),
        Check("m_is_phase", max(r.m_residual for r in reports), tol.factor_order),
    ]
    summary = {
        "beta": main.beta_geometric,
        "beta_flux": main.beta_flux,
        "beta_ordered_product": oracle,
        "phi_k": main.phi_k,
        "loop_area_d": main.loop_area_d,
        "dynamical_phase": main.dynamical_phase[:8],
        "beta_spread": spread,
        "checks": [c.row() for c in checks],
    }
    return summary, rows, checks


def run_sweep(cfg: RunConfig):
    model, path = cfg.model(), cfg.drive()
    st, tol = cfg.study, cfg.tolerances
    by_level = {}
    for n in sorted(set(int(n) for n in st.levels)):
        try:
            by_level[n] = analysis.transition_sweep(path, model, n, st.epsilons, workers=cfg.workers)
        except ContractError as exc:
            raise ConfigurationError(str(exc)) from None
    rows, checks = [], []
    ia = model.trunc.interior_a
    for n, reps in by_level.items():
        for r in reps:
            row = {
                "n_initial": n,
                "epsilon": r.epsilon,
                "total_out": r.total_out,
                "leakage": r.leakage,
                "alpha_re": r.alpha_tilde.real,
                "alpha_im": r.alpha_tilde.imag,
            }
            row.update({f"p_{k}": r.probabilities.get(k, 0.0) for k in range(ia)})
            rows.append(row)
        checks.append(Check(f"slope_n{n}", abs(reps[0].fitted_slope - st.slope_target), tol.slope))
        checks.append(Check(f"bookkeeping_n{n}", max(r.bookkeeping_defect for r in reps), tol.bookkeeping))
        small = [r for r in reps if r.epsilon <= 0.1]
        checks.append(Check(f"argmax_n{n}", float(sum(r.most_probable != n for r in small)), 0.5))
    levels = sorted(by_level)
    ratios = {}
    if 0 in by_level:
        base = {r.epsilon: r.total_out for r in by_level[0]}
        for n in levels:
            if n:
                ratios[str(n)] = {
                    "measured": [r.total_out / base[r.epsilon] for r in by_level[n]],
                    "two_n_plus_one": 2 * n + 1,
                    "n_squared": n * n,
                }
    summary = {
        "epsilons": sorted(float(e) for e in set(st.epsilons)),
        "slopes": {str(n): by_level[n][0].fitted_slope for n in levels},
        "level_ratio": ratios,
        "checks": [c.row() for c in checks],
    }
    return summary, rows, checks


def run_track(cfg: RunConfig):
    model, path = cfg.model(), cfg.drive()
    st = cfg.study
    psi0 = _initial_state(cfg, model)
    t_end = path.t_final if st.t_final is None else st.t_final
    times = np.linspace(0.0, t_end, st.samples)
    track = analysis.wavepacket_center_track(path, model, psi0, times)
    rows = [{"t": t, "x1": x1, "x2": x2} for t, x1, x2 in track]
    v = analysis.drift_velocity(track)
    summary = {"t_final": float(t_end), "drift_velocity": v, "start": track[0][1:], "end": track[-1][1:]}
    checks = []
    if st.oracle:
        ref = analysis.lab_frame_track(path, model, psi0, times, dt=cfg.integrator.dt, pad=cfg.integrator.pad)
        for row, (_, y1, y2) in zip(rows, ref):
            row["x1_oracle"], row["x2_oracle"] = y1, y2
        dev = max(math.hypot(a[1] - b[1], a[2] - b[2]) for a, b in zip(track, ref))
        summary["oracle_max_deviation"] = dev
        summary["oracle_drift_velocity"] = analysis.drift_velocity(ref)
        checks.append(Check("oracle_track", dev, cfg.tolerances.oracle))
    summary["checks"] = [c.row() for c in checks]
    return summary, rows, checks


RUNNERS = {
    "verify": run_verify,
    "evolve": run_evolve,
    "phase-loop": run_phase_loop,
    "sweep-epsilon": run_sweep,
    "track-center": run_track,
}


# -- output ----------------------------------------------------------------


def write_outputs(out_dir: Path, command: str, cfg: RunConfig, summary: dict, rows: list) -> Path:
    run_dir = Path(out_dir) / cfg.digest(command)
    run_dir.mkdir(parents=True, exist_ok=True)
    doc = {"command": command, "config": cfg.to_dict(), "config_hash": cfg.digest(command), "summary": summary}
    (run_dir / "summary.json").write_text(json.dumps(_plain(doc), sort_keys=True, indent=2) + "\n")
    if cfg.output.get("format", "csv") == "json":
        (run_dir / "series.json").write_text(json.dumps(_plain(rows), sort_keys=True, indent=2) + "\n")
    else:
        cols = []
        for r in rows:
            cols.extend(k for k in r if k not in cols)
        with open(run_dir / "series.csv", "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=cols, lineterminator="\n")
            w.writeheader()
            for r in rows:
                w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})
    return run_dir


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="landau-factor", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--config", required=True, help="YAML run configuration")
    ap.add_argument("--out", default=None, help="output directory (overrides output.dir)")
    ap.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = load_config(args.config, args.overrides)
        summary, rows, checks = RUNNERS[args.command](cfg)
    except (ConfigurationError, ContractError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except LandauFactorError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_CHECK_FAILED
    out = Path(args.out if args.out is not None else cfg.output.get("dir", "runs"))
    run_dir = write_outputs(out, args.command, cfg, summary, rows)
    failed = [c for c in checks if not c.passed]
    for c in checks:
        print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.residual:.3e} (tol {c.tolerance:.1e})")
    print(f"wrote {run_dir}")
    if failed:
        print("failed checks: " + ", ".join(c.name for c in failed), file=sys.stderr)
        return EXIT_CHECK_FAILED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
