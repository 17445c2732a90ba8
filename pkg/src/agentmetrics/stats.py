"""Statistical analysis routines used by the reporting pipeline.

Implements the analysis battery over aggregated metric values: one-way ANOVA
with Tukey HSD post-hoc pairs (Tukey-Kramer correction for unequal group
sizes), Cohen's d effect sizes, Pearson correlation matrices, Wilson score
intervals for completion rates, chi-square independence tests, and the two
inter-rater agreement coefficients (Fleiss' kappa, Krippendorff's alpha with
an interval difference metric).

Sum-of-squares decompositions, effect sizes and agreement coefficients are
computed explicitly; only distribution tail probabilities (F, chi-square,
studentized range) are delegated to scipy.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as _sps

from .errors import DegenerateDataError, InvalidInputError


@dataclass(frozen=True)
class AnovaResult:
    """One-way ANOVA decomposition and F test."""

    ss_between: float
    ss_within: float
    ss_total: float
    df_between: int
    df_within: int
    ms_between: float
    ms_within: float
    f_stat: float
    p_value: float


@dataclass(frozen=True)
class TukeyPair:
    """One pairwise comparison from a Tukey HSD post-hoc test."""

    group_a: str
    group_b: str
    mean_diff: float  # mean(a) - mean(b)
    q_stat: float
    p_value: float
    significant: bool


@dataclass(frozen=True)
class EffectSize:
    d: float
    magnitude: str  # negligible / small / medium / large


@dataclass(frozen=True)
class WilsonInterval:
    low: float
    high: float


@dataclass(frozen=True)
class Chi2Result:
    chi2: float
    df: int
    p_value: float


@dataclass(frozen=True)
class CorrelationMatrix:
    """Symmetric Pearson correlation matrix with labelled axes."""

    labels: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def entry(self, a: str, b: str) -> float:
        i, j = self.labels.index(a), self.labels.index(b)
        return self.values[i][j]


def _as_groups(groups: Iterable[Sequence[float]]) -> list[np.ndarray]:
    out = [np.asarray(g, dtype=float) for g in groups]
    if len(out) < 2:
        raise InvalidInputError("anova: need at least two groups")
    for g in out:
        if g.size < 2:
            raise InvalidInputError("anova: every group needs at least two observations")
    return out


def one_way_anova(groups: Iterable[Sequence[float]]) -> AnovaResult:
    """Fixed-effects one-way ANOVA over two or more groups."""
    gs = _as_groups(groups)
    all_values = np.concatenate(gs)
    grand = float(all_values.mean())
    ss_between = float(sum(g.size * (g.mean() - grand) ** 2 for g in gs))
    ss_within = float(sum(((g - g.mean()) ** 2).sum() for g in gs))
    ss_total = float(((all_values - grand) ** 2).sum())
    df_between = len(gs) - 1
    df_within = all_values.size - len(gs)
    ms_between = ss_between / df_between
    ms_within = ss_within / df_within
    if ss_within == 0.0 and ss_between == 0.0:
        raise DegenerateDataError("anova: zero within- and between-group variance")
    if ms_within == 0.0:
        f_stat, p_value = math.inf, 0.0
    else:
        f_stat = ms_between / ms_within
        p_value = float(_sps.f.sf(f_stat, df_between, df_within))
    return AnovaResult(
        ss_between=ss_between,
        ss_within=ss_within,
        ss_total=ss_total,
        df_between=df_between,
        df_within=df_within,
        ms_between=ms_between,
        ms_within=ms_within,
        f_stat=f_stat,
        p_value=p_value,
    )


def tukey_hsd(groups: Mapping[str, Sequence[float]], alpha: float = 0.05) -> list[TukeyPair]:
    """All pairwise Tukey HSD comparisons (Tukey-Kramer for unequal sizes)."""
    if not (0 < alpha < 1):
        raise InvalidInputError(f"tukey_hsd: alpha must be in (0, 1), got {alpha}")
    labels = list(groups)
    anova = one_way_anova(list(groups.values()))
    arrays = {name: np.asarray(g, dtype=float) for name, g in groups.items()}
    k = len(labels)
    out: list[TukeyPair] = []
    for i in range(k):
        for j in range(i + 1, k):
            a, b = arrays[labels[i]], arrays[labels[j]]
            diff = float(a.mean() - b.mean())
            se = math.sqrt(anova.ms_within / 2.0 * (1.0 / a.size + 1.0 / b.size))
            if se == 0.0:  # zero within-variance: separation is all-or-nothing
                q = math.inf if diff != 0.0 else 0.0
            else:
                q = abs(diff) / se
            p = float(_sps.studentized_range.sf(q, k, anova.df_within))
            out.append(
                TukeyPair(
                    group_a=labels[i],
                    group_b=labels[j],
                    mean_diff=diff,
                    q_stat=q,
                    p_value=p,
                    significant=p < alpha,
                )
            )
    return out


def _magnitude(d: float) -> str:
    a = abs(d)
    if a < 0.2:
        return "negligible"
    if a < 0.5:
        return "small"
    if a < 0.8:
        return "medium"
    return "large"


def cohens_d(a: Sequence[float], b: Sequence[float]) -> EffectSize:
    """Cohen's d with a pooled (n-1 weighted) standard deviation."""
    xa, xb = np.asarray(a, dtype=float), np.asarray(b, dtype=float)
    if xa.size < 2 or xb.size < 2:
        raise InvalidInputError("cohens_d: both samples need at least two observations")
    va = float(xa.var(ddof=1))
    vb = float(xb.var(ddof=1))
    pooled = math.sqrt(((xa.size - 1) * va + (xb.size - 1) * vb) / (xa.size + xb.size - 2))
    if pooled == 0.0:
        raise DegenerateDataError("cohens_d: pooled standard deviation is zero")
    d = float((xa.mean() - xb.mean()) / pooled)
    return EffectSize(d=d, magnitude=_magnitude(d))


def pearson_matrix(columns: Mapping[str, Sequence[float]]) -> CorrelationMatrix:
    """Pearson correlation matrix over equal-length labelled columns.

    The result is exactly symmetric with a unit diagonal.
    """
    labels = tuple(columns)
    if len(labels) < 2:
        raise InvalidInputError("pearson_matrix: need at least two columns")
    arrays = [np.asarray(columns[name], dtype=float) for name in labels]
    n = arrays[0].size
    if n < 2:
        raise InvalidInputError("pearson_matrix: need at least two observations per column")
    for name, arr in zip(labels, arrays):
        if arr.size != n:
            raise InvalidInputError(f"pearson_matrix: column '{name}' has mismatched length")
        if float(arr.std()) == 0.0:
            raise DegenerateDataError(f"pearson_matrix: column '{name}' has zero variance")
    data = np.vstack(arrays)
    corr = np.corrcoef(data)
    corr = (corr + corr.T) / 2.0  # enforce exact symmetry
    np.fill_diagonal(corr, 1.0)
    values = tuple(tuple(float(x) for x in row) for row in corr)
    return CorrelationMatrix(labels=labels, values=values)


def wilson_interval(successes: int, n: int, z: float = 1.96) -> WilsonInterval:
    """Wilson score interval for a binomial proportion."""
    if n <= 0:
        raise InvalidInputError(f"wilson_interval: n must be > 0, got {n}")
    if not (0 <= successes <= n):
        raise InvalidInputError(f"wilson_interval: successes must be in [0, n], got {successes}")
    if z <= 0:
        raise InvalidInputError(f"wilson_interval: z must be > 0, got {z}")
    p_hat = successes / n
    z2 = z * z
    denom = 1.0 + z2 / n
    centre = (p_hat + z2 / (2 * n)) / denom
    margin = z * math.sqrt(p_hat * (1 - p_hat) / n + z2 / (4 * n * n)) / denom
    return WilsonInterval(low=max(0.0, centre - margin), high=min(1.0, centre + margin))


def chi_square_independence(table: Sequence[Sequence[float]]) -> Chi2Result:
    """Chi-square test of independence on an r x c contingency table."""
    obs = np.asarray(table, dtype=float)
    if obs.ndim != 2 or obs.shape[0] < 2 or obs.shape[1] < 2:
        raise InvalidInputError("chi_square_independence: need an r x c table with r, c >= 2")
    if (obs < 0).any():
        raise InvalidInputError("chi_square_independence: counts must be >= 0")
    row_sums = obs.sum(axis=1, keepdims=True)
    col_sums = obs.sum(axis=0, keepdims=True)
    total = obs.sum()
    if total <= 0:
        raise InvalidInputError("chi_square_independence: table has no observations")
    expected = row_sums @ col_sums / total
    if (expected == 0).any():
        raise InvalidInputError("chi_square_independence: a margin is zero (empty row or column)")
    chi2 = float(((obs - expected) ** 2 / expected).sum())
    df = (obs.shape[0] - 1) * (obs.shape[1] - 1)
    return Chi2Result(chi2=chi2, df=df, p_value=float(_sps.chi2.sf(chi2, df)))


# ---------------------------------------------------------------------------
# Inter-rater agreement


def fleiss_kappa_from_counts(counts: Sequence[Sequence[int]]) -> float:
    """Fleiss' kappa from an items x categories count matrix.

    Every item must be rated by the same number of raters (>= 2). Perfect
    agreement on a single category makes chance agreement total as well; that
    degenerate 0/0 case is defined as 1.0.
    """
    matrix = np.asarray(counts, dtype=float)
    if matrix.ndim != 2 or matrix.shape[0] < 2 or matrix.shape[1] < 2:
        raise InvalidInputError(
            "fleiss_kappa: need >= 2 items and an items x categories matrix with >= 2 categories"
        )
    if (matrix < 0).any():
        raise InvalidInputError("fleiss_kappa: counts must be >= 0")
    raters = matrix[0].sum()
    if raters < 2:
        raise InvalidInputError("fleiss_kappa: need at least two raters per item")
    if not np.allclose(matrix.sum(axis=1), raters):
        raise InvalidInputError("fleiss_kappa: every item must have the same number of ratings")
    n_items = matrix.shape[0]
    p_j = matrix.sum(axis=0) / (n_items * raters)
    p_i = ((matrix**2).sum(axis=1) - raters) / (raters * (raters - 1))
    p_bar = float(p_i.mean())
    p_e = float((p_j**2).sum())
    if p_e == 1.0:
        return 1.0  # all raters used one category everywhere
    return (p_bar - p_e) / (1.0 - p_e)


def fleiss_kappa(ratings: Sequence[Sequence[Hashable]]) -> float:
    """Fleiss' kappa from per-item rater labels (items x raters)."""
    if len(ratings) < 2:
        raise InvalidInputError("fleiss_kappa: need at least two items")
    rater_counts = {len(item) for item in ratings}
    if len(rater_counts) != 1 or min(rater_counts) < 2:
        raise InvalidInputError("fleiss_kappa: need a fixed rater count >= 2 per item")
    categories = sorted({label for item in ratings for label in item}, key=repr)
    if len(categories) < 2:
        # a lone category means total agreement and total chance agreement
        return 1.0
    index = {c: i for i, c in enumerate(categories)}
    counts = []
    for item in ratings:
        row = [0] * len(categories)
        for label in item:
            row[index[label]] += 1
        counts.append(row)
    return fleiss_kappa_from_counts(counts)


def krippendorff_alpha(
    values: Sequence[Sequence[float | None]], metric: str = "interval"
) -> float:
    """Krippendorff's alpha over an items x raters matrix with missing entries.

    ``metric`` selects the difference function: ``"interval"`` (squared
    numeric difference; the default, since all rated scales here are numeric)
    or ``"nominal"``. Items with fewer than two ratings are unpairable and
    drop out. Perfect observed agreement returns 1.0; zero expected
    disagreement (all pairable values identical) is degenerate.
    """
    if metric == "interval":
        delta = lambda a, b: (a - b) ** 2  # noqa: E731
    elif metric == "nominal":
        delta = lambda a, b: 0.0 if a == b else 1.0  # noqa: E731
    else:
        raise InvalidInputError(f"krippendorff_alpha: unknown metric {metric!r}")
    units: list[list[float]] = []
    for item in values:
        unit = [float(v) for v in item if v is not None]
        if len(unit) >= 2:
            units.append(unit)
    if not units:
        raise InvalidInputError("krippendorff_alpha: no unit has two or more ratings")

    # Observed disagreement: within-unit ordered pairs, weighted by 1/(m-1).
    do_num = 0.0
    n_pairable = 0
    for unit in units:
        m = len(unit)
        n_pairable += m
        within = sum(delta(a, b) for a in unit for b in unit)
        do_num += within / (m - 1)
    d_o = do_num / n_pairable

    # Expected disagreement: ordered pairs across all pairable values, via
    # value multiplicities (equivalent to the coincidence-matrix formulation).
    freq = Counter(v for unit in units for v in unit)
    vals = sorted(freq)
    de_num = 0.0
    for a in vals:
        for b in vals:
            if a == b:
                pairs = freq[a] * (freq[a] - 1)
            else:
                pairs = freq[a] * freq[b]
            de_num += pairs * delta(a, b)
    d_e = de_num / (n_pairable * (n_pairable - 1))
    if d_e == 0.0:
        raise DegenerateDataError(
            "krippendorff_alpha: zero expected disagreement (all pairable values identical)"
        )
    return 1.0 - d_o / d_e
