"""
AMT Engine for amscheme
Certifies t-designs in the composition classes of a code: dual distance, weight windows,
mu of each window, exclusion sets on both sides and the Hamming special case
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from block_code import (
    BlockCode,
    CodeError,
    EnumerationSettings,
    class_words,
    default_base,
    dual_code,
    torsion_code,
    weight_data,
    weight_distribution,
)
from design_verify import DEFAULT_MAX_SUBSETS, DesignError, DesignRefusal, is_t_design, supports_of_class
from extension import Composition, class_weights, transpose_composition
from interpolation import PointSet, mu_rank

logger = logging.getLogger(__name__)


class CertificationError(ValueError):
    """The certification question is malformed for this code"""


@dataclass
class AMTInput:
    """
    One certification run

    K holds compositions of C whose classes are known designs by other means;
    L holds compositions of the dual whose classes in C-perp are weakly
    t-balanced. target None asks for the largest t. k_valid_up_to caps the
    result when the K classes are only known to be designs up to some t.
    """

    code: BlockCode
    base: Optional[Tuple[int, ...]] = None
    K: FrozenSet[Composition] = frozenset()
    L: FrozenSet[Composition] = frozenset()
    target: Optional[int] = None
    k_valid_up_to: Optional[int] = None
    verify: bool = False
    settings: EnumerationSettings = field(default_factory=EnumerationSettings)
    max_subsets: int = DEFAULT_MAX_SUBSETS

    def validate(self) -> Tuple[bool, str]:
        code = self.code
        s = code.scheme.classes
        for alpha in self.K | self.L:
            if alpha.n != code.n or alpha.classes != s:
                return False, f"Composition {alpha} does not fit length {code.n} with {s} classes"
            if alpha.is_zero():
                return False, "The zero composition cannot be excluded"
        if self.L and not (code.scheme.is_translation and code.is_additive):
            return False, "A dual exclusion set needs an additive code over a translation scheme"
        if self.target is not None and not 1 <= self.target <= code.n:
            return False, f"Target t must lie in 1..{code.n}, got {self.target}"
        if self.base is not None and len(self.base) != code.n:
            return False, f"Base vertex has length {len(self.base)}, code length is {code.n}"
        return True, ""


@dataclass
class WindowLevel:
    """Condition at one r: mu(S_r minus K) < delta* - r"""

    r: int
    window: List[Composition]
    kept: List[Composition]
    mu: int
    bound: int

    @property
    def margin(self) -> int:
        return self.bound - self.mu

    @property
    def satisfied(self) -> bool:
        return self.mu < self.bound

    def to_dict(self) -> Dict[str, Any]:
        return {
            'r': self.r,
            'window': [list(a.alpha) for a in self.window],
            'kept': [list(a.alpha) for a in self.kept],
            'mu': self.mu,
            'bound': self.bound,
            'margin': self.margin,
            'satisfied': self.satisfied,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int) -> 'WindowLevel':
        return cls(
            data['r'],
            [Composition(n, tuple(a)) for a in data['window']],
            [Composition(n, tuple(a)) for a in data['kept']],
            data['mu'],
            data['bound'],
        )


@dataclass
class ClassSummary:
    """One nonzero composition class of the code"""

    alpha: Composition
    count: int
    excluded: bool = False
    design_t: Optional[int] = None
    lambda_t: Optional[Fraction] = None
    verified: Optional[bool] = None

    @property
    def block_size(self) -> int:
        return self.alpha.weight

    def to_dict(self) -> Dict[str, Any]:
        return {
            'alpha': list(self.alpha.alpha),
            'block_size': self.block_size,
            'count': self.count,
            'excluded': self.excluded,
            'design_t': self.design_t,
            'lambda_t': None if self.lambda_t is None else str(self.lambda_t),
            'verified': self.verified,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int) -> 'ClassSummary':
        return cls(
            Composition(n, tuple(data['alpha'])),
            data['count'],
            data['excluded'],
            data['design_t'],
            None if data['lambda_t'] is None else Fraction(data['lambda_t']),
            data['verified'],
        )


@dataclass
class BalanceCheck:
    """Outcome of a weakly t-balanced test on one dual class"""

    alpha: Composition
    t: int
    balanced: bool
    words: int
    detail: str = ''

    def to_dict(self) -> Dict[str, Any]:
        return {'alpha': list(self.alpha.alpha), 't': self.t, 'balanced': self.balanced,
                'words': self.words, 'detail': self.detail}

    @classmethod
    def from_dict(cls, data: Dict[str, Any], n: int) -> 'BalanceCheck':
        return cls(Composition(n, tuple(data['alpha'])), data['t'], data['balanced'], data['words'], data['detail'])


@dataclass
class AMTReport:
    """Everything needed to re-check a certification by hand"""

    code_name: str
    scheme_name: str
    n: int
    size: int
    base: Tuple[int, ...]
    method: str
    delta_star: int
    delta_star_L: int
    K: List[Composition]
    L: List[Composition]
    levels: List[WindowLevel]
    certified_t: int
    target: Optional[int] = None
    dual_method: str = ''
    classes: List[ClassSummary] = field(default_factory=list)
    l_transcript: List[BalanceCheck] = field(default_factory=list)
    l_accepted: Optional[bool] = None
    k_valid_up_to: Optional[int] = None
    run_config: Dict[str, Any] = field(default_factory=dict)

    @property
    def target_met(self) -> bool:
        return self.target is None or self.certified_t >= self.target

    def to_dict(self) -> Dict[str, Any]:
        return {
            'code': self.code_name,
            'scheme': self.scheme_name,
            'n': self.n,
            'size': self.size,
            'base': list(self.base),
            'method': self.method,
            'delta_star': self.delta_star,
            'delta_star_L': self.delta_star_L,
            'K': [list(a.alpha) for a in self.K],
            'L': [list(a.alpha) for a in self.L],
            'levels': [level.to_dict() for level in self.levels],
            'certified_t': self.certified_t,
            'target': self.target,
            'target_met': self.target_met,
            'dual_method': self.dual_method,
            'classes': [summary.to_dict() for summary in self.classes],
            'l_transcript': [check.to_dict() for check in self.l_transcript],
            'l_accepted': self.l_accepted,
            'k_valid_up_to': self.k_valid_up_to,
            'run_config': self.run_config,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AMTReport':
        n = data['n']
        return cls(
            code_name=data['code'],
            scheme_name=data['scheme'],
            n=n,
            size=data['size'],
            base=tuple(data['base']),
            method=data['method'],
            delta_star=data['delta_star'],
            delta_star_L=data['delta_star_L'],
            K=[Composition(n, tuple(a)) for a in data['K']],
            L=[Composition(n, tuple(a)) for a in data['L']],
            levels=[WindowLevel.from_dict(level, n) for level in data['levels']],
            certified_t=data['certified_t'],
            target=data['target'],
            dual_method=data['dual_method'],
            classes=[ClassSummary.from_dict(summary, n) for summary in data['classes']],
            l_transcript=[BalanceCheck.from_dict(check, n) for check in data['l_transcript']],
            l_accepted=data['l_accepted'],
            k_valid_up_to=data['k_valid_up_to'],
            run_config=data['run_config'],
        )


@dataclass
class ExclusionSuggestion:
    """A class that may go into K (side 'K') or L (side 'L'), valid for t <= valid_up_to (None: every t)"""

    alpha: Composition
    side: str
    reason: str
    valid_up_to: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        return {'alpha': list(self.alpha.alpha), 'side': self.side, 'reason': self.reason,
                'valid_up_to': self.valid_up_to}


# Windows and dual distance


def window_sets(code: BlockCode, base: Optional[Sequence[int]] = None,
                settings: Optional[EnumerationSettings] = None) -> Dict[int, List[Composition]]:
    """
    S_r = {alpha : r <= |alpha| <= n - r, alpha occurs in C} for 1 <= r <= n

    Windows with r > n / 2 are empty.
    """
    data = weight_data(code, base, settings)
    support = data.support()
    return {
        r: [alpha for alpha in support if r <= alpha.weight <= code.n - r]
        for r in range(1, code.n + 1)
    }


def _dual_distance(dual_support: Iterable[Composition], excluded: Iterable[Composition] = ()) -> int:
    excluded = set(excluded)
    weights = [alpha.weight for alpha in dual_support if not alpha.is_zero() and alpha not in excluded]
    if not weights:
        raise CertificationError("The dual support has no nonzero composition outside L")
    return min(weights)


def delta_star(code: BlockCode, L: Iterable[Composition] = (),
               settings: Optional[EnumerationSettings] = None) -> int:
    """
    Smallest |alpha| over nonzero alpha outside L with E_alpha C != 0

    Raises:
        CertificationError: If the dual support is {0} after removing L
    """
    return _dual_distance(weight_data(code, settings=settings).dual_support, L)


def _mu_of(kept: Sequence[Composition], memo: Dict[FrozenSet[Composition], int]) -> int:
    key = frozenset(kept)
    if key not in memo:
        if not kept:
            memo[key] = -1
        else:
            points = PointSet.from_iterable([alpha.alpha for alpha in kept])
            memo[key] = mu_rank(points)
    return memo[key]


def _levels(windows: Dict[int, List[Composition]], K: FrozenSet[Composition], bound: int,
            memo: Dict[FrozenSet[Composition], int]) -> List[WindowLevel]:
    levels = []
    for r, window in windows.items():
        kept = [alpha for alpha in window if alpha not in K]
        levels.append(WindowLevel(r, window, kept, _mu_of(kept, memo), bound - r))
    return levels


def _largest_prefix(levels: Sequence[WindowLevel]) -> int:
    t = 0
    for level in levels:
        if not level.satisfied:
            break
        t = level.r
    return t


# Weakly balanced arrays


def weakly_balanced_check(words: Any, t: int, scheme, workers: int = 1) -> Tuple[bool, Dict[Tuple[int, Tuple[int, ...]], int], str]:
    """
    Is the word set a weakly t-balanced array over the scheme?

    For every coordinate set of size u <= t, the number of words whose
    restriction has composition gamma (relative to the zero vertex) must
    depend only on u and gamma.

    Returns:
        Tuple of (balanced, counts keyed by (u, gamma) from the first
        coordinate set of each size, description of the first failure)

    Raises:
        CertificationError: If t exceeds the word length
    """
    array = np.asarray(words, dtype=np.int64)
    if array.size == 0:
        return True, {}, ''
    array = array.reshape(len(array), -1)
    n = array.shape[1]
    if t > n:
        raise CertificationError(f"t = {t} exceeds the length {n}")
    s = scheme.classes
    labels = scheme.relation[0][array]
    counts: Dict[Tuple[int, Tuple[int, ...]], int] = {}
    for u in range(1, t + 1):
        weights = class_weights(u, s)
        key_count = (u + 1) ** s
        subsets = np.array(list(combinations(range(n), u)), dtype=np.int64)
        per_batch = max(1, (1 << 20) // max(1, len(array) * u))
        bounds = [(start, min(start + per_batch, len(subsets))) for start in range(0, len(subsets), per_batch)]

        def histograms(bound: Tuple[int, int]) -> np.ndarray:
            start, stop = bound
            block = subsets[start:stop]
            keys = weights[labels[:, block]].sum(axis=-1)
            offsets = np.arange(len(block), dtype=np.int64)[None, :] * key_count
            flat = np.bincount((keys + offsets).ravel(), minlength=len(block) * key_count)
            return flat.reshape(len(block), key_count)

        if workers > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                tables = list(pool.map(histograms, bounds))
        else:
            tables = [histograms(bound) for bound in bounds]
        table = np.concatenate(tables)
        reference = table[0]
        for key in np.flatnonzero(reference):
            gamma = []
            value = int(key)
            for _ in range(s):
                value, a = divmod(value, u + 1)
                gamma.append(a)
            counts[(u, tuple(gamma))] = int(reference[key])
        mismatched = np.flatnonzero((table != reference[None, :]).any(axis=1))
        if len(mismatched):
            first = tuple(int(p) + 1 for p in subsets[0])
            other = tuple(int(p) + 1 for p in subsets[int(mismatched[0])])
            return False, counts, f"coordinates {first} and {other} see different restrictions"
    return True, counts, ''


def _validate_dual_classes(dual: BlockCode, L: Sequence[Composition], t: int,
                           settings: EnumerationSettings) -> List[BalanceCheck]:
    checks = []
    for alpha in L:
        words = class_words(dual, alpha, settings=settings)
        balanced, _, detail = weakly_balanced_check(words, t, dual.scheme, settings.workers)
        checks.append(BalanceCheck(alpha, t, balanced, len(words), detail))
        if not balanced:
            break
    return checks


# Certification


def certify(inp: AMTInput) -> AMTReport:
    """
    Largest t (or the target) with mu(S_r minus K) < delta*_L - r for 1 <= r <= t

    With L nonempty the dual classes in L are checked to be weakly t-balanced
    at each candidate t from the largest down; if no candidate passes, the
    result without L stands and the transcript records the failures.

    Raises:
        CertificationError: On a malformed input
    """
    valid, message = inp.validate()
    if not valid:
        raise CertificationError(message)
    code = inp.code
    settings = inp.settings
    base = tuple(inp.base) if inp.base is not None else default_base(code)
    data = weight_data(code, base, settings)
    windows = window_sets(code, base, settings)
    plain = _dual_distance(data.dual_support)
    memo: Dict[FrozenSet[Composition], int] = {}
    levels = _levels(windows, inp.K, plain, memo)
    certified = _largest_prefix(levels)
    chosen_bound = plain
    transcript: List[BalanceCheck] = []
    l_accepted = None
    if inp.L:
        with_l = _dual_distance(data.dual_support, inp.L)
        l_levels = _levels(windows, inp.K, with_l, memo)
        candidate = _largest_prefix(l_levels)
        l_accepted = False
        if candidate <= certified:
            logger.info(f"{code.name}: L does not raise t above {certified}")
        else:
            dual = dual_code(code)
            for t in range(candidate, certified, -1):
                checks = _validate_dual_classes(dual, sorted(inp.L), t, settings)
                transcript.extend(checks)
                if all(check.balanced for check in checks):
                    logger.info(f"{code.name}: dual classes in L are weakly {t}-balanced")
                    levels, certified, chosen_bound, l_accepted = l_levels, t, with_l, True
                    break
            if not l_accepted:
                logger.warning(f"{code.name}: L was not validated above t = {certified}, keeping the K-only result")
    if inp.k_valid_up_to is not None and certified > inp.k_valid_up_to:
        logger.info(f"{code.name}: capping t = {certified} at {inp.k_valid_up_to}, the validity of K")
        certified = inp.k_valid_up_to
    logger.info(f"{code.name}: delta* = {plain}, certified t = {certified}")

    report = AMTReport(
        code_name=code.name,
        scheme_name=code.scheme.name,
        n=code.n,
        size=code.size,
        base=base,
        method='general',
        delta_star=plain,
        delta_star_L=chosen_bound,
        K=sorted(inp.K),
        L=sorted(inp.L),
        levels=levels,
        certified_t=certified,
        target=inp.target,
        dual_method=data.dual_method,
        l_transcript=transcript,
        l_accepted=l_accepted,
        k_valid_up_to=inp.k_valid_up_to,
    )
    report.classes = summarize_classes(code, base, certified, inp.K, inp.verify, settings, inp.max_subsets)
    return report


def summarize_classes(code: BlockCode, base: Tuple[int, ...], t: int, K: Iterable[Composition],
                      verify: bool, settings: EnumerationSettings,
                      max_subsets: int = DEFAULT_MAX_SUBSETS) -> List[ClassSummary]:
    """One summary per nonzero class; with verify, each claimed design is counted exhaustively."""
    K = set(K)
    summaries = []
    for alpha, count in weight_distribution_items(code, base, settings):
        summary = ClassSummary(alpha, count, excluded=alpha in K)
        if t >= 1 and alpha.weight >= t:
            summary.design_t = t
            if verify:
                result = is_t_design(supports_of_class(code, alpha, base, settings), t,
                                     settings.workers, max_subsets)
                summary.verified = not isinstance(result, DesignRefusal)
                if summary.verified:
                    summary.lambda_t = result.lambda_t
                else:
                    logger.error(f"{code.name}: class {alpha} is not a {t}-design: {result.witness}")
        summaries.append(summary)
    return summaries


def weight_distribution_items(code: BlockCode, base: Tuple[int, ...],
                              settings: EnumerationSettings) -> List[Tuple[Composition, int]]:
    distribution = weight_data(code, base, settings).distribution
    return [(alpha, count) for alpha, count in distribution.items() if count and not alpha.is_zero()]


def hamming_certify(code: BlockCode, K: Iterable[int] = (), with_dual_condition: bool = True,
                    settings: Optional[EnumerationSettings] = None,
                    base: Optional[Sequence[int]] = None, verify: bool = False) -> AMTReport:
    """
    The 1-class case: at each r, either the number of code weights in [r, n - r]
    (outside K) is at most delta* - r, or the number of dual weights in
    [r, n - r] is at most delta - r

    Args:
        code: Code over a 1-class scheme
        K: Hamming weights whose words are known designs
        with_dual_condition: Also accept r through the dual-side count

    Raises:
        CertificationError: If the scheme has more than one class
    """
    if code.scheme.classes != 1:
        raise CertificationError(f"hamming_certify needs a 1-class scheme, {code.scheme.name} has {code.scheme.classes}")
    settings = settings or EnumerationSettings()
    base = tuple(base) if base is not None else default_base(code)
    data = weight_data(code, base, settings)
    n = code.n
    K = {Composition(n, (int(w),)) for w in K}
    code_weights = [alpha for alpha in data.support() if not alpha.is_zero()]
    dual_weights = [alpha for alpha in data.dual_support if not alpha.is_zero()]
    delta = min(alpha.weight for alpha in code_weights)
    dstar = _dual_distance(data.dual_support)
    levels = []
    t = 0
    broken = False
    for r in range(1, n + 1):
        window = [alpha for alpha in code_weights if r <= alpha.weight <= n - r]
        kept = [alpha for alpha in window if alpha not in K]
        # mu of a set of c distinct reals is c - 1
        level = WindowLevel(r, window, kept, len(kept) - 1, dstar - r)
        if not level.satisfied and with_dual_condition:
            dual_window = [alpha for alpha in dual_weights if r <= alpha.weight <= n - r]
            if len(dual_window) <= delta - r:
                level = WindowLevel(r, dual_window, dual_window, len(dual_window) - 1, delta - r)
        levels.append(level)
        if not broken and level.satisfied:
            t = r
        else:
            broken = True
    logger.info(f"{code.name}: Hamming path delta = {delta}, delta* = {dstar}, certified t = {t}")
    report = AMTReport(
        code_name=code.name,
        scheme_name=code.scheme.name,
        n=n,
        size=code.size,
        base=base,
        method='hamming-dual' if with_dual_condition else 'hamming',
        delta_star=dstar,
        delta_star_L=dstar,
        K=sorted(K),
        L=[],
        levels=levels,
        certified_t=t,
        dual_method=data.dual_method,
    )
    report.classes = summarize_classes(code, base, t, K, verify, settings)
    return report


# Exclusion suggestions


def _is_complete_design(code: BlockCode, alpha: Composition, base: Tuple[int, ...],
                        settings: EnumerationSettings) -> bool:
    blocks = supports_of_class(code, alpha, base, settings)
    return blocks.is_simple and blocks.count == comb(code.n, alpha.weight)


def _torsion_suggestions(code: BlockCode, side: str, settings: EnumerationSettings) -> List[ExclusionSuggestion]:
    element_class = code.scheme.class_set.element_class
    odd_class, even_class = int(element_class[1]), int(element_class[2])
    torsion = torsion_code(code)
    t2 = hamming_certify(torsion, settings=settings).certified_t
    suggestions = []
    for alpha in weight_distribution(code, settings=settings).support():
        if alpha.is_zero() or alpha.alpha[odd_class - 1] or alpha.weight >= code.n:
            continue
        suggestions.append(ExclusionSuggestion(
            alpha, side, f"torsion words: supports of weight-{alpha.weight} words of the torsion code", t2))
    return suggestions


def suggest_exclusions(code: BlockCode, settings: Optional[EnumerationSettings] = None) -> List[ExclusionSuggestion]:
    """
    Classes that are designs for reasons outside the window test

    - classes whose supports are every |alpha|-subset exactly once, typically
      paired with their negation class alpha'
    - for additive codes over the 4-cycle, classes without odd symbols: the
      words of the torsion code, designs up to the t certified for it; the same
      classes of the dual code are offered for L
    """
    settings = settings or EnumerationSettings()
    base = default_base(code)
    transpose_map = code.scheme.transpose_map
    suggestions: List[ExclusionSuggestion] = []
    for alpha in weight_distribution(code, base, settings).support():
        if alpha.is_zero() or alpha.weight >= code.n:
            continue
        if _is_complete_design(code, alpha, base, settings):
            partner = transpose_composition(alpha, transpose_map)
            reason = (f"negation pair with {partner}: supports are every {alpha.weight}-subset once"
                      if partner != alpha else f"supports are every {alpha.weight}-subset once")
            suggestions.append(ExclusionSuggestion(alpha, 'K', reason))
    group = code.group
    if (group is not None and group.factors == (4,) and code.scheme.classes == 2
            and code.is_additive and code.scheme.class_set.element_class[1] != code.scheme.class_set.element_class[2]):
        try:
            suggestions.extend(_torsion_suggestions(code, 'K', settings))
            suggestions.extend(_torsion_suggestions(dual_code(code), 'L', settings))
        except (CodeError, CertificationError, DesignError) as e:
            logger.warning(f"{code.name}: no torsion suggestions: {e}")
    for suggestion in suggestions:
        logger.info(f"{code.name}: suggest {suggestion.side} {suggestion.alpha} ({suggestion.reason})")
    return suggestions


def apply_suggestions(suggestions: Sequence[ExclusionSuggestion], side: str) -> Tuple[FrozenSet[Composition], Optional[int]]:
    """The compositions for one side and the smallest validity bound among them."""
    chosen = [s for s in suggestions if s.side == side]
    bounds = [s.valid_up_to for s in chosen if s.valid_up_to is not None]
    return frozenset(s.alpha for s in chosen), (min(bounds) if bounds else None)
