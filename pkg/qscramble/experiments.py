# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2025- qscramble Developers and their Assignees

# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at

#     http://www.apache.org/licenses/LICENSE-2.0

# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

""" Scrambling experiments on the Ising chain.

    - `run_spreading`: C_ij(t) for a fixed butterfly site i over all other
      sites j, in the integrable (hX = 0) and chaotic (hX = 1) regimes.
    - `run_state_comparison`: C_ij(t) of Trotterized against exact evolution
      for several initial states, with the state norm distance at every time.
    - `run_trotter_tradeoff`: C(t) for exact evolution and several Trotter
      plans, with the deviation from exact and the circuit depths.
    - `run_synthesis_check`: Pauli-exponential circuits against the dense
      exponential.

Every experiment writes CSV data and a `report.json` manifest into the output
directory; wall-clock timings go to a separate `timing.json` so that reruns
with the same configuration reproduce all other files byte for byte.
"""

import dataclasses
import itertools
import json
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple

import jax
import jax.numpy as jnp
import numpy as np
import numpyro
import numpyro.distributions as dist
import pandas as pd

from qscramble.circuit import depth_report
from qscramble.errors import ConfigError, OracleDisagreementError
from qscramble.otoc import (
    METHODS, ButterflyConfig, ExactEvolution, OtocPoint, OtocSeries, TrotterEvolution,
    commutator_series, save_series
)
from qscramble.pauli import PAULI_LETTERS, PauliString, build_ising_hamiltonian, ground_state
from qscramble.random import PRNGKey, key_for
from qscramble.statevector import Statevector, circuit_unitary, norm_distance, prepare
from qscramble.synthesis import exponential_oracle, synthesize_exponential
from qscramble.trotter import (
    ORDERS, SPLITS, TrotterPlan, error_slope, evolution_circuit, exact_trajectory,
    trotter_step, trotter_trajectory
)
from qscramble.util import is_finite_real, is_int_scalar, spectral_distance, time_grid
from qscramble.version import VERSION

__all__ = [
    'RECIPES', 'EVOLUTIONS', 'StateRecipe', 'RunConfig', 'load_config',
    'prepare_state', 'prepare_states',
    'spreading_metrics', 'run_spreading', 'run_state_comparison', 'run_trotter_tradeoff',
    'run_synthesis_check', 'verify_manifest',
]

logger = logging.getLogger(__name__)

RECIPES = ("all-up", "ground-state-integrable", "ghz", "random-pm-y", "gaussian-pm-y")
DEFAULT_RECIPES = ("all-up", "ground-state-integrable", "ghz", "random-pm-y")
EVOLUTIONS = ("trotter", "exact")

# (label, order, dt); None marks exact evolution
TRADEOFF_VARIANTS = (
    ("exact", None, None),
    ("order4_dt0.001", 4, 0.001),
    ("order4_dt0.1", 4, 0.1),
    ("order1_dt0.01", 1, 0.01),
)
SLOPE_DTS = (0.1, 0.05, 0.025, 0.0125)


class StateRecipe(NamedTuple):
    """ An initial state.

    :param kind: One of `RECIPES`. "gaussian-pm-y" is an exploratory variant of
        "random-pm-y" that draws the number of |-y> sites from a discretized
        Gaussian over Hamming weight.
    :param samples: Number of random states averaged over (random kinds).
    :param width: Standard deviation of the Hamming-weight Gaussian.
    """
    kind: str
    samples: int = 1
    width: float = 1.0


def _random_pm_y_signs(recipe: StateRecipe, n: int, rng_key) -> jnp.ndarray:
    if recipe.kind == "random-pm-y":
        return dist.Bernoulli(probs=0.5).sample(rng_key, (n,))
    weight_key, site_key = jax.random.split(rng_key)
    weights = jnp.arange(n + 1)
    logits = dist.Normal(n / 2, recipe.width).log_prob(weights)
    weight = dist.Categorical(logits=logits).sample(weight_key)
    order = jax.random.permutation(site_key, n)
    return (order < weight).astype(jnp.int32)


def prepare_state(
        recipe: StateRecipe,
        n: int,
        seed: int,
        J: float = -1.,
        hZ: float = 1.,
        sample: int = 0
    ) -> Statevector:  # noqa: E121,E125
    """ Prepares the initial state of a recipe.

    :param recipe: The recipe; |up> is |0>.
    :param n: Number of qubits.
    :param seed: Run seed; random recipes draw sample k from key_for(PRNGKey(seed), 0, k).
    :param J: Coupling of the integrable Hamiltonian (ground-state recipe).
    :param hZ: Longitudinal field of the integrable Hamiltonian (ground-state recipe).
    :param sample: Index of the random sample.
    """
    if recipe.kind == "all-up":
        return prepare("all-zero", n)
    if recipe.kind == "ghz":
        return prepare("ghz", n)
    if recipe.kind == "ground-state-integrable":
        gs = ground_state(build_ising_hamiltonian(n, J, hZ, 0.))
        return prepare("amplitudes", n, gs.amplitudes)
    if recipe.kind in ("random-pm-y", "gaussian-pm-y"):
        signs = _random_pm_y_signs(recipe, n, key_for(PRNGKey(seed), 0, sample))
        return prepare("product", n, ["-y" if s else "+y" for s in np.asarray(signs)])
    raise ConfigError(f"unknown state recipe '{recipe.kind}'")


def prepare_states(recipe: StateRecipe, n: int, seed: int, J: float = -1., hZ: float = 1.) -> List[Statevector]:
    samples = recipe.samples if recipe.kind in ("random-pm-y", "gaussian-pm-y") else 1
    return [prepare_state(recipe, n, seed, J, hZ, sample=k) for k in range(samples)]


@dataclass
class RunConfig:
    """ Configuration of an experiment run.

    Built from a JSON file and/or command line flags; `validate` must pass
    before any work starts.
    """
    n: int = 9
    J: float = -1.
    hZ: float = 1.
    hX: float = 1.
    order: int = 4
    dt: float = 0.001
    split: str = "hz-hx"
    t_start: float = 0.
    t_max: float = 4.
    stride: float = 0.02
    i: int = 5
    j: Optional[int] = None
    recipes: Tuple[str, ...] = DEFAULT_RECIPES
    samples: int = 1
    out: str = "out"
    seed: int = 0
    method: str = "direct"
    evolution: str = "trotter"
    jobs: int = 1
    shots: Optional[int] = None
    onset_threshold: float = 0.1
    saturation_band: float = 0.6
    alignment_threshold: float = 0.1
    tradeoff_t_max: float = 3.
    error_bound: Optional[float] = None
    slopes: bool = True

    def validate(self) -> 'RunConfig':
        def check(condition: bool, message: str):
            if not condition:
                raise ConfigError(message)

        check(is_int_scalar(self.n) and self.n >= 2, f"n must be an integer >= 2, got {self.n!r}")
        for name in ("J", "hZ", "hX", "dt", "t_start", "t_max", "stride",
                     "onset_threshold", "saturation_band", "alignment_threshold", "tradeoff_t_max"):
            check(is_finite_real(getattr(self, name)), f"{name} must be a finite real")
        check(self.order in ORDERS, f"order must be one of {ORDERS}, got {self.order!r}")
        check(self.split in SPLITS, f"split must be one of {SPLITS}, got {self.split!r}")
        check(self.dt > 0, "dt must be positive")
        check(self.stride > 0, "stride must be positive")
        check(self.saturation_band > 0, "saturation_band must be positive")
        check(0 <= self.t_start <= self.t_max, "need 0 <= t_start <= t_max")
        check(is_int_scalar(self.i) and 1 <= self.i <= self.n, f"i must lie in 1..{self.n}")
        check(self.j is None or (is_int_scalar(self.j) and 1 <= self.j <= self.n), f"j must lie in 1..{self.n}")
        check(len(self.recipes) > 0 and all(r in RECIPES for r in self.recipes),
              f"recipes must be a non-empty subset of {RECIPES}")
        check(is_int_scalar(self.samples) and self.samples >= 1, "samples must be a positive integer")
        check(is_int_scalar(self.seed) and self.seed >= 0, "seed must be a non-negative integer")
        check(self.method in METHODS, f"method must be one of {METHODS}")
        check(self.evolution in EVOLUTIONS, f"evolution must be one of {EVOLUTIONS}")
        check(is_int_scalar(self.jobs) and self.jobs >= 1, "jobs must be a positive integer")
        check(self.shots is None or (is_int_scalar(self.shots) and self.shots >= 1), "shots must be a positive integer")
        check(self.shots is None or self.method == "interferometric", "shots need the interferometric method")
        check(self.error_bound is None or is_finite_real(self.error_bound), "error_bound must be a finite real")
        return self

    @property
    def times(self) -> List[float]:
        return time_grid(self.t_start, self.t_max, self.stride)

    @property
    def plan(self) -> TrotterPlan:
        return TrotterPlan(self.order, self.dt, self.split)

    def to_dict(self) -> Dict[str, Any]:
        doc = dataclasses.asdict(self)
        doc["recipes"] = list(self.recipes)
        return doc

    @classmethod
    def from_dict(cls, doc: Mapping[str, Any]) -> 'RunConfig':
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - names
        if unknown:
            raise ConfigError(f"unknown configuration keys {sorted(unknown)}")
        values = dict(doc)
        if "recipes" in values:
            values["recipes"] = tuple(values["recipes"])
        return cls(**values)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r") as f:
            doc = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise ConfigError(f"cannot read configuration {path}: {e}") from e
    return RunConfig.from_dict(doc)


#### shared helpers ####

def _evolution(config: RunConfig, h, kind: Optional[str] = None, plan: Optional[TrotterPlan] = None):
    if (kind or config.evolution) == "exact":
        return ExactEvolution(h)
    return TrotterEvolution(h, plan or config.plan)


def _averaged_series(
        config: RunConfig, states: Sequence[Statevector], cfg: ButterflyConfig,
        evolution, times: Sequence[float], label: str
    ) -> OtocSeries:  # noqa: E121,E125
    """ Evaluates a series for every sample state and averages Re F and C. """
    runs = [
        commutator_series(
            psi, cfg, evolution, times, method=config.method, initial_state=label,
            shots=config.shots, rng_key=key_for(PRNGKey(config.seed), 1, k) if config.shots else None,
        )
        for k, psi in enumerate(states)
    ]
    if len(runs) == 1:
        return runs[0]
    points = [
        OtocPoint(group[0].t, float(np.mean([p.reF for p in group])), float(np.mean([p.C for p in group])))
        for group in zip(*(run.points for run in runs))
    ]
    return runs[0]._replace(points=points)


def _write_frame(frame: pd.DataFrame, directory: str, name: str) -> str:
    path = os.path.join(directory, name)
    frame.to_csv(path, index=False, float_format="%.17g")
    return path


def _manifest_entry(path: str, directory: str, rows: Optional[int] = None) -> Dict[str, Any]:
    entry: Dict[str, Any] = {"file": os.path.relpath(path, directory)}
    if rows is not None:
        entry["rows"] = rows
    return entry


def _stamp() -> Dict[str, str]:
    return {"qscramble": VERSION, "jax": jax.__version__, "numpyro": numpyro.__version__}


def _write_report(directory: str, experiment: str, config: RunConfig, body: Dict[str, Any], timing: Dict[str, float]):
    report = {"experiment": experiment, "config": config.to_dict(), "version": _stamp()}
    report.update(body)
    with open(os.path.join(directory, "report.json"), "w") as f:
        json.dump(report, f, indent=2, sort_keys=True)
    with open(os.path.join(directory, "timing.json"), "w") as f:
        json.dump(timing, f, indent=2, sort_keys=True)
    return report


def _check_range(series: OtocSeries):
    for p in series.points:
        if not (-1 - 1e-9 <= p.reF <= 1 + 1e-9 and -1e-9 <= p.C <= 4 + 1e-9):
            raise OracleDisagreementError(f"OTOC value out of range at t={p.t}: reF={p.reF}, C={p.C}")


#### spreading ####

def spreading_metrics(
        times: Sequence[float], C: Sequence[float], threshold: float,
        saturation_time: Optional[float] = None
    ) -> Dict[str, Optional[float]]:  # noqa: E121,E125
    """ Summarizes one C(t) curve.

    :param times: Increasing output times.
    :param C: C(t) at `times`.
    :param threshold: C level that marks the onset of spreading.
    :param saturation_time: Time at which C is compared with its late-window
        mean, typically 1/|J|. Ignored if None or outside the window.
    :return: A dict with
        - `onset`: first time with C > threshold, None if never,
        - `saturation_mean`, `saturation_std`: mean and standard deviation of
          C over the last half of the window,
        - `early_value`, `early_deviation`: C at the grid time closest to
          `saturation_time` and its relative distance to `saturation_mean`
          (None outside the window, or when the mean stays below `threshold`).
    """
    times = np.asarray(times)
    C = np.asarray(C)
    above = np.nonzero(C > threshold)[0]
    tail = C[times >= times[0] + (times[-1] - times[0]) / 2]
    mean = float(np.mean(tail))
    early_value, early_deviation = None, None
    if saturation_time is not None and times[0] <= saturation_time <= times[-1]:
        early_value = float(C[np.argmin(np.abs(times - saturation_time))])
        if mean > threshold:
            early_deviation = abs(early_value - mean) / mean
    return {
        "onset": float(times[above[0]]) if len(above) else None,
        "saturation_mean": mean,
        "saturation_std": float(np.std(tail)),
        "early_value": early_value,
        "early_deviation": early_deviation,
    }


def run_spreading(config: RunConfig) -> Dict[str, Any]:
    """ Computes C_ij(t) for all j != i in the integrable (hX = 0) and chaotic
    (hX = 1) regimes and writes one series per (regime, j) plus a matrix CSV
    per regime (rows t, one column per j).
    """
    config.validate()
    os.makedirs(config.out, exist_ok=True)
    times = config.times
    sites = [config.j] if config.j is not None else [j for j in range(1, config.n + 1) if j != config.i]
    recipe = StateRecipe(config.recipes[0], config.samples)
    states = prepare_states(recipe, config.n, config.seed, config.J, config.hZ)
    regimes = {"integrable": 0., "chaotic": 1.}
    saturation_time = 1. / abs(config.J) if config.J != 0 else None

    manifest, metrics, timing = [], {}, {}
    for regime, hX in regimes.items():
        h = build_ising_hamiltonian(config.n, config.J, config.hZ, hX)
        evolution = _evolution(config, h)

        def one_site(j: int) -> Tuple[OtocSeries, float]:
            start = time.perf_counter()
            cfg = ButterflyConfig(config.i, j, config.n)
            series = _averaged_series(config, states, cfg, evolution, times, recipe.kind)
            return series, time.perf_counter() - start

        if config.jobs > 1:
            with ThreadPoolExecutor(max_workers=config.jobs) as pool:
                results = list(pool.map(one_site, sites))
        else:
            results = [one_site(j) for j in sites]

        matrix = {"t": times}
        metrics[regime] = {}
        for j, (series, elapsed) in zip(sites, results):
            _check_range(series)
            paths = save_series(series, config.out, regime)
            manifest.append(_manifest_entry(paths["csv"], config.out, len(times)))
            manifest.append(_manifest_entry(paths["json"], config.out))
            matrix[f"j{j}"] = list(series.C)
            summary = spreading_metrics(times, series.C, config.onset_threshold, saturation_time)
            deviation = summary["early_deviation"]
            summary["saturated_early"] = deviation is not None and deviation <= config.saturation_band
            metrics[regime][str(j)] = summary
            timing[f"{regime}_j{j}"] = elapsed
            logger.info("%s regime: C_%d%d done in %.1fs", regime, config.i, j, elapsed)
        path = _write_frame(pd.DataFrame(matrix), config.out, f"spreading_{regime}_{config.method}.csv")
        manifest.append(_manifest_entry(path, config.out, len(times)))

    body = {
        "manifest": manifest,
        "metrics": metrics,
        "onset_threshold": config.onset_threshold,
        "saturation_time": saturation_time,
        "saturation_band": config.saturation_band,
        "regimes": {name: {"hX": hX} for name, hX in regimes.items()},
        "regime_difference": ["hX"],
    }
    return _write_report(config.out, "spreading", config, body, timing)


#### state comparison ####

def run_state_comparison(config: RunConfig) -> Dict[str, Any]:
    """ For every recipe, computes C_ij(t) under Trotterized and exact
    evolution and the norm distance of the evolved states at every time.

    Raises OracleDisagreementError if `config.error_bound` is set and some raw
    state distance exceeds it.
    """
    config.validate()
    os.makedirs(config.out, exist_ok=True)
    times = config.times
    j = config.j if config.j is not None else 3
    cfg = ButterflyConfig(config.i, j, config.n)
    h = build_ising_hamiltonian(config.n, config.J, config.hZ, config.hX)
    trotter, exact = TrotterEvolution(h, config.plan), ExactEvolution(h)

    manifest, errors, timing = [], {}, {}
    for kind in config.recipes:
        start = time.perf_counter()
        states = prepare_states(StateRecipe(kind, config.samples), config.n, config.seed, config.J, config.hZ)
        circuit_series = _averaged_series(config, states, cfg, trotter, times, kind)
        exact_series = _averaged_series(config, states, cfg, exact, times, kind)
        _check_range(circuit_series)
        _check_range(exact_series)
        raw = np.zeros(len(times))
        aligned = np.zeros(len(times))
        for psi in states:
            pairs = zip(trotter_trajectory(h, times, config.plan, psi), exact_trajectory(h, times, psi))
            distances = [norm_distance(a, b) for a, b in pairs]
            raw = np.maximum(raw, [d.raw for d in distances])
            aligned = np.maximum(aligned, [d.aligned for d in distances])
        frame = pd.DataFrame({
            "t": times,
            "C_circuit": circuit_series.C,
            "C_exact": exact_series.C,
            "error_raw": raw,
            "error_aligned": aligned,
        })
        path = _write_frame(frame, config.out, f"states_{kind}_i{cfg.i}_j{cfg.j}.csv")
        manifest.append(_manifest_entry(path, config.out, len(times)))
        errors[kind] = {"max_error_raw": float(np.max(raw)), "max_error_aligned": float(np.max(aligned))}
        timing[kind] = time.perf_counter() - start
        logger.info("state %s: max norm distance %.3e", kind, errors[kind]["max_error_raw"])

    report = _write_report(config.out, "states", config, {"manifest": manifest, "errors": errors}, timing)
    if config.error_bound is not None:
        failing = {k: v["max_error_raw"] for k, v in errors.items() if v["max_error_raw"] > config.error_bound}
        if failing:
            raise OracleDisagreementError(f"state errors above {config.error_bound:g}: {failing}")
    return report


#### Trotter trade-off ####

def _global_error_slopes(h, psi: Statevector, split: str) -> Dict[str, float]:
    target = exact_trajectory(h, [1.], psi)[0]
    slopes = {}
    for order in ORDERS:
        errors = [
            norm_distance(trotter_trajectory(h, [1.], TrotterPlan(order, dt, split), psi)[0], target).raw
            for dt in SLOPE_DTS
        ]
        slopes[str(order)] = error_slope(SLOPE_DTS, errors)
    return slopes


def run_trotter_tradeoff(config: RunConfig) -> Dict[str, Any]:
    """ Compares C(t) from exact evolution with Trotterized evolution under
    several plans on the separable initial state, and reports the deviation
    from exact together with per-step and total circuit depths.

    Order-2 and order-4 plans are evaluated for both splits; the order-1 step
    is the same circuit under either split.
    """
    config.validate()
    times = [t for t in config.times if t <= config.tradeoff_t_max + 1e-12]
    if not times:
        raise ConfigError(
            f"trade-off window is empty: t_start={config.t_start:g} > tradeoff_t_max={config.tradeoff_t_max:g}"
        )
    os.makedirs(config.out, exist_ok=True)
    j = config.j if config.j is not None else 3
    cfg = ButterflyConfig(config.i, j, config.n)
    h = build_ising_hamiltonian(config.n, config.J, config.hZ, config.hX)
    psi = prepare_state(StateRecipe("all-up"), config.n, config.seed)
    t_end = times[-1]

    curves = {"t": times}
    rows, timing = [], {}
    exact_C = None
    splits = sorted({config.split, *SPLITS}, key=SPLITS.index)
    for label, order, dt in TRADEOFF_VARIANTS:
        for split in (splits if order not in (None, 1) else [config.split]):
            name = label if order in (None, 1) else f"{label}_{split}"
            start = time.perf_counter()
            if order is None:
                series = commutator_series(psi, cfg, ExactEvolution(h), times, method=config.method)
                _check_range(series)
                exact_C = series.C
                curves["C_exact"] = exact_C
                timing[name] = time.perf_counter() - start
                continue
            plan = TrotterPlan(order, dt, split)
            series = commutator_series(psi, cfg, TrotterEvolution(h, plan), times, method=config.method)
            _check_range(series)
            step = depth_report(trotter_step(h, dt, order, split))
            total = depth_report(evolution_circuit(h, t_end, plan).circuit)
            curves[f"C_{name}"] = series.C
            rows.append({
                "variant": name, "order": order, "dt": dt, "split": split,
                "max_dC": float(np.max(np.abs(series.C - exact_C))),
                "step_gates": step.gate_count, "step_cnots": step.cnot_count, "step_depth": step.depth,
                "total_gates": total.gate_count, "total_depth": total.depth,
            })
            timing[name] = time.perf_counter() - start
            logger.info("trade-off %s: max |dC| = %.3e", name, rows[-1]["max_dC"])

    manifest = [
        _manifest_entry(_write_frame(pd.DataFrame(curves), config.out, "tradeoff_curves.csv"), config.out, len(times)),
        _manifest_entry(_write_frame(pd.DataFrame(rows), config.out, "tradeoff_summary.csv"), config.out, len(rows)),
    ]
    body: Dict[str, Any] = {
        "manifest": manifest,
        "alignment_threshold": config.alignment_threshold,
        "aligned": {row["variant"]: row["max_dC"] < config.alignment_threshold for row in rows},
        "window": [times[0], t_end],
    }
    if config.slopes:
        body["global_error_slopes"] = {split: _global_error_slopes(h, psi, split) for split in SPLITS}
    return _write_report(config.out, "tradeoff", config, body, timing)


#### synthesis check ####

def _all_strings(n: int):
    for letters in itertools.product(PAULI_LETTERS, repeat=n):
        word = "".join(letters)
        if set(word) != {"I"}:
            yield PauliString(word)


def _random_strings(n: int, count: int, rng_key):
    draws = dist.Categorical(probs=jnp.full(4, 0.25)).sample(rng_key, (count, n))
    for row in np.asarray(draws):
        word = "".join(PAULI_LETTERS[k] for k in row)
        if set(word) == {"I"}:
            word = word[:-1] + "Z"
        yield PauliString(word)


def run_synthesis_check(
        exhaustive_n: Sequence[int] = (1, 2, 3),
        random_n: Sequence[int] = (4, 5),
        random_count: int = 200,
        thetas: Sequence[float] = (0.1, 0.7, -1.3),
        seed: int = 0,
        tolerance: float = 1e-12
    ) -> pd.DataFrame:  # noqa: E121,E125
    """ Compares synthesized Pauli-exponential circuits with the dense
    exponential, exhaustively for small n and on random strings otherwise.

    :return: One row per (string, theta) with the spectral distance and a
        pass flag.
    """
    rows = []
    cases = [(s, theta) for n in exhaustive_n for s in _all_strings(n) for theta in thetas]
    for n in random_n:
        key = key_for(PRNGKey(seed), n)
        theta_draws = np.asarray(dist.Uniform(-2., 2.).sample(key_for(key, 1), (random_count,)))
        cases += list(zip(_random_strings(n, random_count, key_for(key, 0)), map(float, theta_draws)))
    for sigma, theta in cases:
        distance = spectral_distance(
            circuit_unitary(synthesize_exponential(sigma, theta).circuit), exponential_oracle(sigma, theta)
        )
        rows.append({
            "n": sigma.n, "string": sigma.letters, "theta": theta,
            "distance": distance, "pass": distance < tolerance,
        })
    return pd.DataFrame(rows)


#### manifest ####

def verify_manifest(directory: str) -> List[str]:
    """ Checks that every file listed in `directory/report.json` exists and
    parses, and that CSV row counts match the manifest.

    :return: List of problems; empty if the manifest is intact.
    """
    problems = []
    with open(os.path.join(directory, "report.json"), "r") as f:
        report = json.load(f)
    for entry in report.get("manifest", []):
        path = os.path.join(directory, entry["file"])
        if not os.path.exists(path):
            problems.append(f"{entry['file']}: missing")
            continue
        try:
            if path.endswith(".csv"):
                rows = len(pd.read_csv(path))
                if "rows" in entry and rows != entry["rows"]:
                    problems.append(f"{entry['file']}: {rows} rows, manifest says {entry['rows']}")
            else:
                with open(path, "r") as f:
                    json.load(f)
        except (ValueError, pd.errors.ParserError) as e:
            problems.append(f"{entry['file']}: {e}")
    return problems
