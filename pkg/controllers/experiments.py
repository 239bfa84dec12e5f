"""Trial runners, sweeps and the verification suites behind the CLI."""
import logging
import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import curve_fit

from controllers.trial_worker import TrialPool
from models.continuous_strategy import GreedyCop, GreedyRobber, PaperCop, PaperRobber, RandomRobber
from models.cover import (
    ThresholdParams,
    build_cover,
    check_regions_nonempty,
    cover_witness,
    expected_region_occupancy,
    log_union_bound,
    occupancy_trials,
    threshold_radius,
)
from models.discrete_strategy import SnapCop, SnapRobber
from models.errors import (
    CoverTooLarge,
    InsufficientData,
    XTooCloseToBoundary,
    XTooCloseToCenter,
)
from models.game import (
    CAPTURED,
    CONTINUOUS,
    DISCRETE,
    ESCAPED,
    FAULT,
    Cube,
    GameConfig,
    IdleCop,
    StationaryRobber,
    max_round_bound,
    play,
)
from models.geometry import center, make_region
from models.oracles import copwin_bruteforce, is_dismantlable, random_connected_rgg
from models.rgg import Rgg, RggParams
from utils.helpers import derive_seed

COPS = {
    CONTINUOUS: ('paper', 'greedy', 'idle'),
    DISCRETE: ('paper', 'idle'),
}
ROBBERS = {
    CONTINUOUS: ('paper', 'random', 'greedy', 'stationary'),
    DISCRETE: ('paper', 'stationary'),
}
PLACEMENTS = ('random', 'axis')


@dataclass(frozen=True)
class TrialSpec:
    trial: int
    seed: int
    mode: str
    d: int
    r: float
    profile: object
    n: int = None
    cop: str = 'paper'
    robber: str = 'paper'
    placement: str = 'random'
    on_cornered: str = 'truncate'
    max_rounds: int = None
    keep_trace: bool = False
    keep_graph: bool = False

    def __post_init__(self):
        if self.mode not in COPS:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.cop not in COPS[self.mode]:
            raise ValueError(f"cop '{self.cop}' is not available in {self.mode} games")
        if self.robber not in ROBBERS[self.mode]:
            raise ValueError(f"robber '{self.robber}' is not available in {self.mode} games")
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement {self.placement!r}")
        if self.mode == DISCRETE and self.n is None:
            raise ValueError("discrete games need n")

    def round_limit(self):
        if self.max_rounds is not None:
            return self.max_rounds
        bound = max_round_bound(self.d, self.r, self.profile)
        # Snapping costs the discrete cop part of each gain.
        return 2 * bound if self.mode == DISCRETE else bound


@dataclass
class ExperimentRow:
    trial: int
    seed: int
    n: int
    r: float
    d: int
    profile: str
    outcome: str
    rounds: int
    min_step_gain: float
    fault_reason: str
    wallclock_ms: float
    mode: str = CONTINUOUS
    cop: str = 'paper'
    robber: str = 'paper'
    events: int = 0

    def __post_init__(self):
        if self.outcome not in (CAPTURED, ESCAPED, FAULT):
            raise ValueError(f"unknown outcome {self.outcome!r}")
        if self.rounds < 0:
            raise ValueError("rounds must be non-negative")


@dataclass
class TrialResult:
    row: ExperimentRow
    trace: object = None
    graph: object = None


def _strategies(spec, rng):
    if spec.mode == DISCRETE:
        cop = SnapCop() if spec.cop == 'paper' else IdleCop()
        robber = SnapRobber(rng if spec.placement == 'random' else None)
        if spec.robber == 'stationary':
            robber = StationaryRobber(placer=robber)
        return cop, robber

    cops = {'paper': PaperCop, 'greedy': GreedyCop, 'idle': IdleCop}
    placement_rng = rng if spec.placement == 'random' else None
    if spec.robber == 'random':
        robber = RandomRobber(rng)
    elif spec.robber == 'greedy':
        robber = GreedyRobber(placement_rng)
    else:
        robber = PaperRobber(placement_rng, on_cornered=spec.on_cornered)
        if spec.robber == 'stationary':
            robber = StationaryRobber(placer=robber)
    return cops[spec.cop](), robber


def _row(spec, trace, started):
    outcome = trace.outcome
    return ExperimentRow(
        trial=spec.trial,
        seed=spec.seed,
        n=spec.n if spec.mode == DISCRETE else None,
        r=spec.r,
        d=spec.d,
        profile=spec.profile.name,
        outcome=outcome.kind,
        rounds=outcome.round,
        min_step_gain=trace.min_step_gain(),
        fault_reason=outcome.reason if outcome.kind == FAULT else '',
        wallclock_ms=(time.perf_counter() - started) * 1000.0,
        mode=spec.mode,
        cop=spec.cop,
        robber=spec.robber,
        events=len(trace.events),
    )


def run_continuous_trial(spec):
    started = time.perf_counter()
    config = GameConfig(d=spec.d, r=spec.r, max_rounds=spec.round_limit(),
                        profile=spec.profile, mode=CONTINUOUS)
    cop, robber = _strategies(spec, np.random.default_rng(spec.seed))
    trace = play(config, cop, robber, Cube(spec.d))
    row = _row(spec, trace, started)
    return TrialResult(row, trace if spec.keep_trace else None)


def run_discrete_trial(spec):
    started = time.perf_counter()
    g = Rgg.generate(RggParams(n=spec.n, r=spec.r, d=spec.d, seed=spec.seed))
    config = GameConfig(d=spec.d, r=spec.r, max_rounds=spec.round_limit(),
                        profile=spec.profile, mode=DISCRETE)
    # The graph consumes the trial seed; the robber gets a second stream.
    cop, robber = _strategies(spec, np.random.default_rng([spec.seed, 1]))
    trace = play(config, cop, robber, g)
    row = _row(spec, trace, started)
    return TrialResult(row, trace if spec.keep_trace else None, g if spec.keep_graph else None)


def run_trial(spec):
    if spec.mode == DISCRETE:
        return run_discrete_trial(spec)
    return run_continuous_trial(spec)


def _error_row(spec, message):
    return ExperimentRow(
        trial=spec.trial, seed=spec.seed, n=spec.n if spec.mode == DISCRETE else None,
        r=spec.r, d=spec.d, profile=spec.profile.name, outcome=FAULT, rounds=0,
        min_step_gain=None, fault_reason=message, wallclock_ms=0.0,
        mode=spec.mode, cop=spec.cop, robber=spec.robber,
    )


def run_trials(specs, jobs=1, runner=run_trial):
    """Run every spec; the result list is ordered by trial index whatever
    ``jobs`` is."""
    specs = list(specs)
    if jobs <= 1 or len(specs) <= 1:
        results = []
        for spec in specs:
            try:
                results.append(runner(spec))
            except Exception as e:
                logging.exception(f"Trial {spec.trial} failed")
                results.append(TrialResult(_error_row(spec, f"{type(e).__name__}: {str(e)}")))
        return sorted(results, key=lambda result: result.row.trial)

    by_trial = {spec.trial: spec for spec in specs}
    results, errors = TrialPool(jobs).run(specs, runner)
    results.extend(TrialResult(_error_row(by_trial[trial], message)) for trial, message in errors)
    return sorted(results, key=lambda result: result.row.trial)


def make_specs(mode, d, radii, trials, master_seed, profile, n=None, first_trial=0, **options):
    """One TrialSpec per (r, trial) with consecutive trial indices."""
    specs = []
    trial = first_trial
    for r in radii:
        for _ in range(trials):
            specs.append(TrialSpec(trial=trial, seed=derive_seed(master_seed, trial), mode=mode,
                                   d=d, r=r, profile=profile, n=n, **options))
            trial += 1
    return specs


@dataclass(frozen=True)
class ScalingFit:
    exponent: float
    coefficient: float
    radii: int


def _power_line(x, exponent, log_coefficient):
    return exponent * x + log_coefficient


def fit_capture_scaling(rows):
    """Least-squares slope of log(median rounds) against log(1/r^2).

    Only captured rows count; at least three distinct radii are needed.
    """
    by_radius = {}
    for row in rows:
        if row.outcome == CAPTURED:
            by_radius.setdefault(row.r, []).append(row.rounds)
    if len(by_radius) < 3:
        raise InsufficientData(f"need captured rows for 3 radii, got {len(by_radius)}")
    radii = sorted(by_radius)
    x = np.array([math.log(1.0 / (r * r)) for r in radii])
    y = np.array([math.log(statistics.median(by_radius[r])) for r in radii])
    (exponent, log_coefficient), _ = curve_fit(_power_line, x, y, p0=(1.0, 0.0))
    return ScalingFit(float(exponent), math.exp(log_coefficient), len(radii))


@dataclass
class LemmaReport:
    """Results of the cover and occupancy checks for one (n, r, profile)."""
    profile: str
    n: int
    r: float
    log_union_bound: float
    log_target: float = None
    rectangles: int = None
    empty_rectangles: int = None
    expected_occupancy: float = None
    cover_checks: int = 0
    cover_misses: int = 0
    occupancy: object = None
    notes: list = field(default_factory=list)

    @property
    def union_bound(self):
        return math.exp(self.log_union_bound)

    @property
    def passed(self):
        if self.log_target is not None and not self.log_union_bound < self.log_target:
            return False
        if self.empty_rectangles:
            return False
        if self.cover_misses:
            return False
        return self.occupancy is None or self.occupancy.within()

    def to_dict(self):
        data = {
            'profile': self.profile,
            'n': self.n,
            'r': self.r,
            'log_union_bound': self.log_union_bound,
            'union_bound': self.union_bound,
            'log_target': self.log_target,
            'rectangles': self.rectangles,
            'empty_rectangles': self.empty_rectangles,
            'expected_occupancy': self.expected_occupancy,
            'cover_checks': self.cover_checks,
            'cover_misses': self.cover_misses,
            'passed': self.passed,
            'notes': list(self.notes),
        }
        if self.occupancy is not None:
            data.update({
                'occupancy_trials': self.occupancy.trials,
                'occupancy_empty': self.occupancy.empty,
                'occupancy_expected': self.occupancy.expected,
                'occupancy_standard_error': self.occupancy.standard_error,
            })
        return data


def sample_valid_region(rng, r, profile, attempts=10000):
    """A region T(X) for a uniform X at least r/2 from O whose region fits the cube."""
    O = center(2)
    for _ in range(attempts):
        X = rng.random(2)
        try:
            return make_region(X, O, profile, r)
        except (XTooCloseToCenter, XTooCloseToBoundary):
            continue
    return None


def run_lemma(n, r, profile, seed=0, c=None, cover_checks=0, occupancy=0, area=None):
    """Arithmetic, cover and occupancy checks of the snapping-region lemma.

    With ``c`` only the symbolic union bound at the threshold radius is
    evaluated (the target is n^-8); otherwise the cover is built at r and
    checked against one sampled graph.
    """
    if c is not None:
        params = ThresholdParams(c=c, n=n, d=2)
        radius = threshold_radius(c, n, 2)
        return LemmaReport(profile=profile.name, n=n, r=radius,
                           log_union_bound=log_union_bound(params, profile),
                           log_target=-8.0 * math.log(n))

    report = LemmaReport(profile=profile.name, n=n, r=r,
                         log_union_bound=log_union_bound(ThresholdParams(c=1.0, n=n, r=r), profile),
                         expected_occupancy=expected_region_occupancy(2, n, r, profile))
    rng = np.random.default_rng([seed, 2])
    try:
        cover = build_cover(r, profile)
    except CoverTooLarge as e:
        report.notes.append(f"CoverTooLarge: {str(e)}")
        cover = None

    if cover is not None:
        report.rectangles = len(cover)
        g = Rgg.generate(RggParams(n=n, r=r, d=2, seed=seed))
        report.empty_rectangles = check_regions_nonempty(g, cover)
        for _ in range(cover_checks):
            region = sample_valid_region(rng, r, profile)
            if region is None:
                report.notes.append("no valid region could be sampled")
                break
            report.cover_checks += 1
            if cover_witness(cover, region) is None:
                report.cover_misses += 1
        rectangle_area = cover.area
    else:
        rectangle_area = profile.cover_width(r) * profile.cover_height(r)

    if occupancy:
        report.occupancy = occupancy_trials(area if area is not None else rectangle_area,
                                            n, occupancy, derive_seed(seed, 1))
    logging.info(f"Lemma check n={n} r={r}: log bound {report.log_union_bound:.6g}, "
                 f"empty rectangles {report.empty_rectangles}")
    return report


@dataclass
class OracleRow:
    trial: int
    seed: int
    n: int
    r: float
    edges: int
    dismantlable: bool
    copwin: bool

    @property
    def agree(self):
        return self.dismantlable == self.copwin


def run_oracle_suite(trials, max_n, master_seed=0, r=None, min_n=2):
    rows = []
    for trial in range(trials):
        seed = derive_seed(master_seed, trial)
        rng = np.random.default_rng(seed)
        n = int(rng.integers(min_n, max_n + 1))
        radius = r if r is not None else float(rng.uniform(0.2, 0.6))
        graph = random_connected_rgg(n, radius, rng)
        row = OracleRow(trial, seed, n, radius, graph.number_of_edges(),
                        is_dismantlable(graph), copwin_bruteforce(graph))
        if not row.agree:
            logging.error(f"Oracle disagreement in trial {trial}: dismantlable={row.dismantlable}, "
                          f"copwin={row.copwin}")
        rows.append(row)
    return rows
