"""Analysis pipelines over a scored issue corpus.

Four pipelines compose the scoring, statistics and model layers:

1. group comparisons of one dimension across priority, type-group and
   resolution-time halves (adjacent-pair tests, Bonferroni-adjusted);
2. paired first-vs-last comment deltas per dimension and commenter role;
3. a hierarchical logistic model of the Short/Long resolution split
   (controls, then external affective columns, then text-score columns)
   with cross-validated performance, a majority baseline and impact sizes;
4. per-role linear regressions summarized as a +/- sign table.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .corpus import (
    ElementScores,
    IssueReport,
    PRIORITIES,
    PRIORITY_LEVEL,
    ROLES,
    TYPE_GROUP_ORDER,
    role_of,
    score_elements,
)
from .lexicon import DIMENSIONS, Lexicon
from .models import (
    CvReport,
    DesignMatrix,
    FilterDecision,
    FittedModel,
    ImpactEntry,
    LONG,
    binarize_outcome,
    correlation_filter,
    crossval,
    fit_linear,
    fit_logistic,
    impact_sizes,
    lr_test,
    zero_r,
)
from .stats import ComparisonResult, FitResult, bonferroni_alpha, paired_t_test, polyfit, welch_t_test
from .textscore import VadScore, score_text

ELEMENTS = ElementScores.ELEMENTS  # Title, Desc, All, First, Last

RQ2_SCOPES = ("All", "Assignees'", "Reporters'", "Others'")
_SCOPE_ROLE = {"Assignees'": "Assignee", "Reporters'": "Reporter", "Others'": "Other"}

TIME_GROUPS = ("Short time", "High time")

VAD_ELEMENT_KEYS = ("title", "desc", "all", "first", "last")

SIGN_TABLE_ROWS = (
    "Priority", "Issue Type", "Resolution Time", "# votes", "# comments",
    "# watchers", "# assignee prev. issues", "# reporter prev. issues",
)
_SIGN_ROW_COLUMN = {
    "Priority": "priority_level",
    "Issue Type": "bug_group",  # sign of the Bug indicator (All Tasks reference)
    "Resolution Time": "resolution_time",
    "# votes": "votes",
    "# comments": "n_comments",
    "# watchers": "n_watchers",
    "# assignee prev. issues": "assignee_prev_issues",
    "# reporter prev. issues": "reporter_prev_issues",
}


# ---------------------------------------------------------------------------
# corpus scoring
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ScoredIssue:
    issue: IssueReport
    elements: ElementScores
    comment_scores: tuple[VadScore, ...]


def _score_one(issue: IssueReport, lexicon: Lexicon) -> ScoredIssue:
    return ScoredIssue(
        issue=issue,
        elements=score_elements(issue, lexicon),
        comment_scores=tuple(score_text(c.body, lexicon) for c in issue.comments),
    )


_worker_lexicon: Lexicon | None = None


def _init_worker(lexicon: Lexicon) -> None:
    global _worker_lexicon
    _worker_lexicon = lexicon


def _score_batch(issues: list[IssueReport]) -> list[ScoredIssue]:
    return [_score_one(issue, _worker_lexicon) for issue in issues]


def score_corpus(issues, lexicon: Lexicon, jobs: int = 1) -> list[ScoredIssue]:
    """Score every issue; identical output for any jobs value."""
    issues = list(issues)
    if jobs <= 1 or len(issues) < 4 * jobs:
        return [_score_one(issue, lexicon) for issue in issues]
    chunk = max(1, len(issues) // (4 * jobs))
    batches = [issues[i:i + chunk] for i in range(0, len(issues), chunk)]
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(lexicon,)) as pool:
        scored: list[ScoredIssue] = []
        for batch in pool.map(_score_batch, batches):
            scored.extend(batch)
    return scored


def participant_history(issues) -> dict[str, dict[str, int]]:
    """Per issue: prior comment and issue counts of its assignee/reporter.

    "Prior" is by issue creation order (ties broken by id); the current
    issue's own activity is excluded.
    """
    ordered = sorted(issues, key=lambda i: (i.created, i.id))
    comments_by: dict[str, int] = {}
    reported_by: dict[str, int] = {}
    assigned_to: dict[str, int] = {}
    history: dict[str, dict[str, int]] = {}
    for issue in ordered:
        history[issue.id] = {
            "assignee_prev_comments": comments_by.get(issue.assignee, 0) if issue.assignee else 0,
            "reporter_prev_comments": comments_by.get(issue.reporter, 0),
            "assignee_prev_issues": assigned_to.get(issue.assignee, 0) if issue.assignee else 0,
            "reporter_prev_issues": reported_by.get(issue.reporter, 0),
        }
        for comment in issue.comments:
            comments_by[comment.author] = comments_by.get(comment.author, 0) + 1
        reported_by[issue.reporter] = reported_by.get(issue.reporter, 0) + 1
        if issue.assignee:
            assigned_to[issue.assignee] = assigned_to.get(issue.assignee, 0) + 1
    return history


# ---------------------------------------------------------------------------
# group tables (priority / type group / resolution-time half)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupComparison:
    left: str
    right: str
    n_left: int
    n_right: int
    result: ComparisonResult | None
    note: str | None = None


@dataclass(frozen=True)
class GroupRow:
    element: str
    means: dict[str, float | None]
    ns: dict[str, int]
    comparisons: tuple[GroupComparison, ...]


@dataclass(frozen=True)
class GroupTable:
    dimension: str
    groups: tuple[str, ...]
    rows: tuple[GroupRow, ...]
    comparisons: int
    adjusted_alpha: float
    n_total: int
    n_used: int
    n_skipped: int = 0
    skip_reason: str | None = None


def _build_group_table(scored, dimension: str, group_of, groups, alpha: float,
                       n_total: int, n_skipped: int = 0, skip_reason: str | None = None) -> GroupTable:
    groups = tuple(groups)
    per_cell: dict[tuple[str, str], list[float]] = {(e, g): [] for e in ELEMENTS for g in groups}
    used = 0
    for item in scored:
        group = group_of(item)
        if group is None:
            continue
        used += 1
        for element in ELEMENTS:
            vad = item.elements.by_element(element)
            if vad is None:
                continue
            value = vad.get(dimension)
            if value is not None:
                per_cell[(element, group)].append(value)

    n_comparisons = len(ELEMENTS) * (len(groups) - 1)
    adjusted = bonferroni_alpha(alpha, n_comparisons)

    rows = []
    for element in ELEMENTS:
        means = {}
        ns = {}
        for group in groups:
            values = per_cell[(element, group)]
            ns[group] = len(values)
            means[group] = float(np.mean(values)) if values else None
        comparisons = []
        for left, right in zip(groups, groups[1:]):
            a = per_cell[(element, left)]
            b = per_cell[(element, right)]
            if len(a) < 2 or len(b) < 2:
                comparisons.append(GroupComparison(left, right, len(a), len(b),
                                                   result=None, note="insufficient data"))
            else:
                result = welch_t_test(a, b, alpha=adjusted)
                comparisons.append(GroupComparison(left, right, len(a), len(b), result=result))
        rows.append(GroupRow(element=element, means=means, ns=ns, comparisons=tuple(comparisons)))

    return GroupTable(
        dimension=dimension, groups=groups, rows=tuple(rows),
        comparisons=n_comparisons, adjusted_alpha=adjusted,
        n_total=n_total, n_used=used, n_skipped=n_skipped, skip_reason=skip_reason,
    )


def rq1_priority_arousal(corpus, lexicon: Lexicon, alpha: float = 0.05, scores=None) -> GroupTable:
    """Arousal means per priority with Blocker->Trivial adjacent-pair tests."""
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    return _build_group_table(
        scored, "arousal", lambda item: item.issue.priority, PRIORITIES, alpha,
        n_total=len(scored),
    )


def rq1_type_valence(corpus, lexicon: Lexicon, alpha: float = 0.05, scores=None) -> GroupTable:
    """Valence means for Future Dev / All Tasks / Bug groups; type Other excluded."""
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    return _build_group_table(
        scored, "valence", lambda item: item.issue.type_group, TYPE_GROUP_ORDER, alpha,
        n_total=len(scored),
    )


def rq1_dominance_time(corpus, lexicon: Lexicon, alpha: float = 0.05, scores=None) -> GroupTable:
    """Dominance means across a half split of resolution time (resolved issues).

    The faster half of the resolved issues is "Short time", the rest "High
    time" (ties broken by corpus order), so each side holds half the issues.
    """
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    resolved = [item for item in scored if item.issue.resolution_time is not None]
    n_skipped = len(scored) - len(resolved)
    order = sorted(range(len(resolved)), key=lambda i: resolved[i].issue.resolution_time)
    half = {}
    for rank, index in enumerate(order):
        half[resolved[index].issue.id] = "Short time" if rank < len(resolved) // 2 else "High time"
    return _build_group_table(
        resolved, "dominance", lambda item: half[item.issue.id], TIME_GROUPS, alpha,
        n_total=len(scored), n_skipped=n_skipped, skip_reason="unresolved",
    )


# ---------------------------------------------------------------------------
# per-issue summary scatter and curvature fit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SummaryPoint:
    issue_id: str
    valence: float
    arousal: float


@dataclass(frozen=True)
class SummaryResult:
    points: tuple[SummaryPoint, ...]
    linear: FitResult | None
    quadratic: FitResult | None
    n_total: int
    n_skipped: int
    note: str | None = None


def rq1_summary(corpus, lexicon: Lexicon, scores=None) -> SummaryResult:
    """One (valence, arousal) point per issue, averaging Title/Desc/All scores,
    with linear and quadratic fits of arousal on valence."""
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    points = []
    for item in scored:
        values = {"valence": [], "arousal": []}
        for element in ("Title", "Desc", "All"):
            vad = item.elements.by_element(element)
            if vad is None or not vad.has_scores:
                continue
            for dim in values:
                values[dim].append(vad.get(dim))
        if not values["valence"]:
            continue
        points.append(SummaryPoint(
            issue_id=item.issue.id,
            valence=float(np.mean(values["valence"])),
            arousal=float(np.mean(values["arousal"])),
        ))

    linear = quadratic = None
    note = None
    v = [p.valence for p in points]
    a = [p.arousal for p in points]
    if len(points) >= 4 and len(set(v)) > 2:
        linear = polyfit(v, a, 1)
        quadratic = polyfit(v, a, 2)
    else:
        note = "too few distinct points for curvature fits"
    return SummaryResult(
        points=tuple(points), linear=linear, quadratic=quadratic,
        n_total=len(scored), n_skipped=len(scored) - len(points), note=note,
    )


# ---------------------------------------------------------------------------
# first-vs-last paired deltas
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PairedCell:
    dimension: str
    scope: str
    n_pairs: int
    result: ComparisonResult | None
    note: str | None = None


@dataclass(frozen=True)
class PairedDeltaTable:
    cells: tuple[PairedCell, ...]
    comparisons: int
    adjusted_alpha: float
    n_total: int
    scope_counts: dict[str, dict[str, int]]


def _scope_pairs(item: ScoredIssue, scope: str) -> tuple[VadScore, VadScore] | None:
    issue = item.issue
    if issue.status != "Closed":
        return None
    if scope == "All":
        if len(issue.comments) < 4:
            return None
        return item.comment_scores[0], item.comment_scores[-1]
    role = _SCOPE_ROLE[scope]
    indices = [i for i, c in enumerate(issue.comments) if role_of(c, issue) == role]
    if len(indices) < 2:
        return None
    return item.comment_scores[indices[0]], item.comment_scores[indices[-1]]


def rq2_first_last(corpus, lexicon: Lexicon, alpha: float = 0.05, scores=None) -> PairedDeltaTable:
    """Paired first-vs-last comment tests per dimension and commenter scope.

    The All scope uses closed issues with >= 4 comments; each role scope uses
    closed issues where that role wrote >= 2 comments, pairing the role's own
    first and last comment. Positive d means the score rose.
    """
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    n_comparisons = len(DIMENSIONS) * len(RQ2_SCOPES)
    adjusted = bonferroni_alpha(alpha, n_comparisons)

    pairs_by_scope: dict[str, list[tuple[VadScore, VadScore]]] = {s: [] for s in RQ2_SCOPES}
    scope_counts = {s: {"qualified": 0, "excluded": 0} for s in RQ2_SCOPES}
    for item in scored:
        for scope in RQ2_SCOPES:
            pair = _scope_pairs(item, scope)
            if pair is None:
                scope_counts[scope]["excluded"] += 1
            else:
                scope_counts[scope]["qualified"] += 1
                pairs_by_scope[scope].append(pair)

    cells = []
    for dim in DIMENSIONS:
        for scope in RQ2_SCOPES:
            firsts = []
            lasts = []
            for first, last in pairs_by_scope[scope]:
                fv, lv = first.get(dim), last.get(dim)
                if fv is not None and lv is not None:
                    firsts.append(fv)
                    lasts.append(lv)
            if len(firsts) < 2:
                cells.append(PairedCell(dim, scope, len(firsts), result=None, note="insufficient data"))
            else:
                result = paired_t_test(firsts, lasts, alpha=adjusted)
                cells.append(PairedCell(dim, scope, len(firsts), result=result))

    return PairedDeltaTable(
        cells=tuple(cells), comparisons=n_comparisons, adjusted_alpha=adjusted,
        n_total=len(scored), scope_counts=scope_counts,
    )


# ---------------------------------------------------------------------------
# hierarchical resolution-time model
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StageResult:
    name: str
    columns: tuple[str, ...]
    model: FittedModel
    cv: CvReport | None
    lr_p_vs_previous: float | None


@dataclass(frozen=True)
class Rq3Report:
    n_total: int
    n_resolved: int
    n_used: int
    n_skipped_unresolved: int
    n_skipped_incomplete: int
    long_share: float | None
    zero_r: CvReport | None
    stages: tuple[StageResult, ...]
    filter_decisions: tuple[FilterDecision, ...]
    pruned: tuple[str, ...]
    final_model: FittedModel | None
    impacts: tuple[ImpactEntry, ...]
    notices: tuple[str, ...]
    prune_alpha: float = 0.01


CONTROL_COLUMNS = (
    "n_comments", "assignee_prev_comments", "reporter_prev_comments",
    "n_developers", "n_watchers", "n_changes",
    "Critical", "Major", "Minor", "Trivial",
)


def _vad_column_values(item: ScoredIssue) -> dict[str, float] | None:
    elements = {
        "title": item.elements.title,
        "desc": item.elements.description,
        "all": item.elements.all_comments,
        "first": item.elements.first_comment,
        "last": item.elements.last_comment,
    }
    values: dict[str, float] = {}
    for key, vad in elements.items():
        if vad is None or not vad.has_scores:
            return None
        for dim in DIMENSIONS:
            values[f"{key}_{dim[0]}"] = vad.get(dim)
    return values


def rq3_resolution_model(corpus, lexicon: Lexicon, seed: int = 0, scores=None,
                         folds: int = 10, prune_alpha: float = 0.01) -> Rq3Report:
    """Hierarchical logistic models of the Short/Long resolution-time split.

    Stage 1 uses issue controls, stage 2 adds external affective columns when
    every used issue carries them, stage 3 adds the fifteen text-score
    columns after dropping any dominance column correlating > 0.7 with its
    element's valence. Emits likelihood-ratio p-values between stages,
    cross-validated metrics per stage, the majority baseline, and impact
    sizes of the final model pruned to coefficients with p < prune_alpha.
    """
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    notices: list[str] = []
    resolved = [item for item in scored if item.issue.resolution_time is not None]
    n_skipped_unresolved = len(scored) - len(resolved)

    history = participant_history([item.issue for item in scored])

    rows = []
    for item in resolved:
        vad = _vad_column_values(item)
        if vad is None:
            continue
        rows.append((item, vad))
    n_skipped_incomplete = len(resolved) - len(rows)

    def empty_report(reason: str) -> Rq3Report:
        notices.append(reason)
        return Rq3Report(
            n_total=len(scored), n_resolved=len(resolved), n_used=0,
            n_skipped_unresolved=n_skipped_unresolved,
            n_skipped_incomplete=n_skipped_incomplete,
            long_share=None, zero_r=None, stages=(), filter_decisions=(),
            pruned=(), final_model=None, impacts=(), notices=tuple(notices),
            prune_alpha=prune_alpha,
        )

    affective_keys: list[str] = []
    if rows:
        common = set(rows[0][0].issue.external_features)
        for item, _ in rows[1:]:
            common &= set(item.issue.external_features)
        affective_keys = sorted(common)
    if not affective_keys:
        notices.append("no shared affective columns; stage 2 skipped")

    min_rows = max(2 * folds, len(CONTROL_COLUMNS) + len(affective_keys) + 15 + 2)
    if len(rows) < min_rows:
        return empty_report(f"only {len(rows)} usable resolved issues (need >= {min_rows})")

    columns: dict[str, list[float]] = {name: [] for name in CONTROL_COLUMNS}
    for key in affective_keys:
        columns[key] = []
    vad_columns = [f"{el}_{dim[0]}" for el in VAD_ELEMENT_KEYS for dim in DIMENSIONS]
    for name in vad_columns:
        columns[name] = []

    times = []
    for item, vad in rows:
        issue = item.issue
        record = history[issue.id]
        columns["n_comments"].append(len(issue.comments))
        columns["assignee_prev_comments"].append(record["assignee_prev_comments"])
        columns["reporter_prev_comments"].append(record["reporter_prev_comments"])
        columns["n_developers"].append(issue.developer_count)
        columns["n_watchers"].append(issue.watchers)
        columns["n_changes"].append(issue.change_count)
        for indicator in ("Critical", "Major", "Minor", "Trivial"):
            columns[indicator].append(1.0 if issue.priority == indicator else 0.0)
        for key in affective_keys:
            columns[key].append(issue.external_features[key])
        for name in vad_columns:
            columns[name].append(vad[name])
        times.append(issue.resolution_time)

    labels = binarize_outcome(times)
    long_share = labels.count(LONG) / len(labels)
    baseline = zero_r(labels)

    design = DesignMatrix.from_mapping(columns, labels)
    filter_pairs = [(f"{el}_v", f"{el}_d") for el in VAD_ELEMENT_KEYS]
    design, decisions = correlation_filter(design, filter_pairs, threshold=0.7)
    kept_vad = [name for name in vad_columns if name in design.columns]
    for decision in decisions:
        if decision.dropped:
            notices.append(f"dropped {decision.drop} (|r|={abs(decision.r):.3f} with {decision.keep})")

    stage_columns = [("controls", list(CONTROL_COLUMNS))]
    if affective_keys:
        stage_columns.append(("controls+affective", list(CONTROL_COLUMNS) + affective_keys))
    stage_columns.append((
        "controls+affective+vad" if affective_keys else "controls+vad",
        list(CONTROL_COLUMNS) + affective_keys + kept_vad,
    ))

    stages: list[StageResult] = []
    previous: FittedModel | None = None
    for name, cols in stage_columns:
        stage_design = design.subset(cols)
        try:
            model = fit_logistic(stage_design)
        except ValueError as exc:
            return empty_report(f"stage {name} failed: {exc}")
        if not model.converged:
            notices.append(f"stage {name}: fit did not converge (possible separation)")
        try:
            cv = crossval(stage_design, folds=folds, seed=seed)
        except ValueError as exc:
            cv = None
            notices.append(f"stage {name}: cross-validation skipped ({exc})")
        lr_p = lr_test(previous, model) if previous is not None else None
        stages.append(StageResult(name=name, columns=tuple(cols), model=model, cv=cv, lr_p_vs_previous=lr_p))
        previous = model

    final_stage = stages[-1]
    keep = [name for name in final_stage.columns if final_stage.model.p_value(name) < prune_alpha]
    pruned = tuple(name for name in final_stage.columns if name not in keep)
    try:
        final_model = fit_logistic(design.subset(keep))
        impacts = tuple(impact_sizes(final_model, design.subset(keep)))
    except ValueError as exc:
        final_model = None
        impacts = ()
        notices.append(f"final pruned model failed: {exc}")

    return Rq3Report(
        n_total=len(scored), n_resolved=len(resolved), n_used=len(rows),
        n_skipped_unresolved=n_skipped_unresolved,
        n_skipped_incomplete=n_skipped_incomplete,
        long_share=long_share, zero_r=baseline, stages=tuple(stages),
        filter_decisions=tuple(decisions), pruned=pruned,
        final_model=final_model, impacts=impacts, notices=tuple(notices),
        prune_alpha=prune_alpha,
    )


# ---------------------------------------------------------------------------
# per-role sign tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SignTable:
    rows: tuple[str, ...]
    columns: tuple[tuple[str, str], ...]  # (role, dimension) pairs
    cells: dict[tuple[str, str, str], str]  # (row, role, dimension) -> "+" | "-" | ""
    alpha: float
    n_designs: dict[tuple[str, str], int]
    notices: tuple[str, ...]


def rq4_sign_tables(corpus, lexicon: Lexicon, alpha: float = 0.001, scores=None) -> SignTable:
    """Nine linear regressions (role x dimension) of the role's mean comment
    score on issue characteristics; cells show the coefficient sign when
    p < alpha, blank otherwise.

    The Issue Type row carries the Bug-indicator sign (All Tasks reference,
    Future Dev entering as the second indicator). Uses resolved issues whose
    type falls in one of the three groups.
    """
    scored = scores if scores is not None else score_corpus(corpus, lexicon)
    notices: list[str] = []
    history = participant_history([item.issue for item in scored])

    eligible: list[ScoredIssue] = [
        item for item in scored
        if item.issue.resolution_time is not None and item.issue.type_group is not None
    ]

    columns = tuple((role, dim) for role in ROLES for dim in DIMENSIONS)
    cells: dict[tuple[str, str, str], str] = {}
    n_designs: dict[tuple[str, str], int] = {}
    predictor_names = list(_SIGN_ROW_COLUMN.values()) + ["future_dev_group"]

    for role, dim in columns:
        predictors: dict[str, list[float]] = {name: [] for name in predictor_names}
        response: list[float] = []
        for item in eligible:
            issue = item.issue
            values = [
                s.get(dim)
                for c, s in zip(issue.comments, item.comment_scores)
                if role_of(c, issue) == role and s.get(dim) is not None
            ]
            if not values:
                continue
            record = history[issue.id]
            predictors["priority_level"].append(PRIORITY_LEVEL[issue.priority])
            predictors["bug_group"].append(1.0 if issue.type_group == "Bug" else 0.0)
            predictors["future_dev_group"].append(1.0 if issue.type_group == "Future Dev" else 0.0)
            predictors["resolution_time"].append(issue.resolution_time)
            predictors["votes"].append(issue.votes)
            predictors["n_comments"].append(len(issue.comments))
            predictors["n_watchers"].append(issue.watchers)
            predictors["assignee_prev_issues"].append(record["assignee_prev_issues"])
            predictors["reporter_prev_issues"].append(record["reporter_prev_issues"])
            response.append(float(np.mean(values)))

        n_designs[(role, dim)] = len(response)
        if len(response) <= len(predictor_names) + 1:
            notices.append(f"{role}/{dim}: insufficient rows ({len(response)}); column left blank")
            for row in SIGN_TABLE_ROWS:
                cells[(row, role, dim)] = ""
            continue
        try:
            design = DesignMatrix.from_mapping(predictors, response, outcome_kind="real")
            model = fit_linear(design)
        except ValueError as exc:
            notices.append(f"{role}/{dim}: {exc}; column left blank")
            for row in SIGN_TABLE_ROWS:
                cells[(row, role, dim)] = ""
            continue
        for row in SIGN_TABLE_ROWS:
            column = _SIGN_ROW_COLUMN[row]
            if model.p_value(column) < alpha:
                cells[(row, role, dim)] = "+" if model.coefficient(column) > 0 else "-"
            else:
                cells[(row, role, dim)] = ""

    return SignTable(
        rows=SIGN_TABLE_ROWS, columns=columns, cells=cells, alpha=alpha,
        n_designs=n_designs, notices=tuple(notices),
    )


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

ANALYSIS_NAMES = ("rq1", "rq2", "rq3", "rq4", "summary")


@dataclass
class AnalysisResults:
    n_issues: int
    n_scored: int  # issues with at least one scored element
    rq1_priority: GroupTable | None = None
    rq1_type: GroupTable | None = None
    rq1_time: GroupTable | None = None
    rq2: PairedDeltaTable | None = None
    rq3: Rq3Report | None = None
    rq4: SignTable | None = None
    summary: SummaryResult | None = None


def run_analyses(corpus, lexicon: Lexicon, which=ANALYSIS_NAMES, seed: int = 0,
                 alpha: float = 0.05, jobs: int = 1) -> AnalysisResults:
    """Score once and run the selected pipelines deterministically."""
    unknown = set(which) - set(ANALYSIS_NAMES)
    if unknown:
        raise ValueError(f"unknown analyses: {sorted(unknown)}")
    scored = score_corpus(corpus, lexicon, jobs=jobs)
    n_scored = sum(
        1 for item in scored
        if any(vad is not None and vad.has_scores
               for vad in (item.elements.by_element(e) for e in ELEMENTS))
    )
    results = AnalysisResults(n_issues=len(scored), n_scored=n_scored)
    if "rq1" in which:
        results.rq1_priority = rq1_priority_arousal(corpus, lexicon, alpha, scores=scored)
        results.rq1_type = rq1_type_valence(corpus, lexicon, alpha, scores=scored)
        results.rq1_time = rq1_dominance_time(corpus, lexicon, alpha, scores=scored)
    if "summary" in which:
        results.summary = rq1_summary(corpus, lexicon, scores=scored)
    if "rq2" in which:
        results.rq2 = rq2_first_last(corpus, lexicon, alpha, scores=scored)
    if "rq3" in which:
        results.rq3 = rq3_resolution_model(corpus, lexicon, seed=seed, scores=scored)
    if "rq4" in which:
        results.rq4 = rq4_sign_tables(corpus, lexicon, scores=scored)
    return results
