"""Per-day network analysis over a vertex timeline.

Distances are computed once over every region of the final day. Because each day's
vertex list extends the previous one, a day's distance matrix is the leading block of
that matrix.
"""

import uuid
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import date
from typing import Optional

import numpy as np

from src.data.ingest import load_timeline
from src.models import CommunityRecord, MetricsRow, Partition, RunConfig, VertexTimeline
from src.network.build import DistanceMatrix, build_snapshot, distance_matrix
from src.network.community import community_stats, louvain_best_of
from src.network.metrics import clustering, degree_stats, path_metrics, triangle_count
from src.network.spectral import spectral_summary
from src.pipeline.storage import write_communities, write_metrics
from src.utils.logger import RunLogger, get_logger
from src.utils.timing import StageTimer, StageTimings

logger = get_logger()


@dataclass(frozen=True)
class DayTask:
    """One day's vertex list."""

    day: date
    vertices: tuple[str, ...]
    new_vertices: int


@dataclass
class DayResult:
    """Everything computed for one day."""

    row: MetricsRow
    communities: CommunityRecord
    edges: int
    fallbacks: list[tuple[str, str]] = field(default_factory=list)
    timings: StageTimings = field(default_factory=StageTimings)


@dataclass
class AnalysisResult:
    """Rows and community records of a run, in date order."""

    rows: list[MetricsRow]
    communities: list[CommunityRecord]
    timings: StageTimings
    run_id: str


def _empty_day(task: DayTask) -> DayResult:
    row = MetricsRow(
        date=task.day,
        n=0,
        new_vertices=0,
        d_km=0.0,
        max_degree=0,
        avg_degree=0.0,
        avg_clustering=0.0,
        triangles=0,
        spectral_radius=0.0,
        communities=0,
        largest_community=0,
        components=0,
    )
    return DayResult(row=row, communities=CommunityRecord(date=task.day), edges=0)


def analyze_day(task: DayTask, dist: DistanceMatrix, config: RunConfig) -> DayResult:
    """Build one day's snapshot and compute every metric on it."""
    n = len(task.vertices)
    if n == 0:
        return _empty_day(task)

    timings = StageTimings()
    fallbacks: list[tuple[str, str]] = []

    with StageTimer(timings, "snapshot"):
        sub = dist if dist.n == n else dist.subset(range(n))
        snapshot = build_snapshot(task.day, task.vertices, sub, threshold=config.threshold_km)

    with StageTimer(timings, "metrics"):
        max_degree, avg_degree = degree_stats(snapshot)
        cc = clustering(snapshot, exclude_low_degree=config.cc_exclude_low_degree)
        triangles = triangle_count(snapshot)
        diameter, avg_path = path_metrics(snapshot) if snapshot.connected else (None, None)

    with StageTimer(timings, "spectral"):
        spectral = spectral_summary(
            snapshot,
            tol=config.eigen_tol,
            max_iter=config.eigen_max_iter,
            radius_method=config.eigensolver,
            fiedler_method=config.fiedler_solver,
            fallback=config.eigensolver_fallback,
            on_fallback=lambda quantity, reason: fallbacks.append((quantity, reason)),
        )
        logger.debug(
            "%s: %d eigen iterations, residual %.1e",
            task.day,
            spectral.iterations_used,
            spectral.residual,
        )

    with StageTimer(timings, "community"):
        if snapshot.edge_count == 0:
            partition = Partition(assignment=list(range(n)))
            stats = community_stats(partition)
        else:
            partition, stats = louvain_best_of(
                snapshot, seed=config.louvain_seed, restarts=config.louvain_restarts
            )

    row = MetricsRow(
        date=task.day,
        n=n,
        new_vertices=task.new_vertices,
        d_km=snapshot.connectivity_param,
        max_degree=max_degree,
        avg_degree=avg_degree,
        avg_clustering=cc.average,
        triangles=triangles,
        diameter=diameter,
        avg_path_length=avg_path,
        spectral_radius=spectral.spectral_radius,
        algebraic_connectivity=spectral.algebraic_connectivity,
        modularity=stats.modularity,
        communities=stats.community_count,
        largest_community=stats.largest_size,
        components=snapshot.component_count,
    )
    record = CommunityRecord(
        date=task.day,
        communities=[[task.vertices[i] for i in members] for members in partition.members()],
        modularity=stats.modularity,
    )
    return DayResult(
        row=row,
        communities=record,
        edges=snapshot.edge_count,
        fallbacks=fallbacks,
        timings=timings,
    )


# Worker-process state, set once per worker by _init_worker.
_worker_dist: Optional[DistanceMatrix] = None
_worker_config: Optional[RunConfig] = None


def _init_worker(entries: np.ndarray, config: RunConfig) -> None:
    global _worker_dist, _worker_config
    _worker_dist = DistanceMatrix(entries)
    _worker_config = config


def _analyze_in_worker(task: DayTask) -> DayResult:
    return analyze_day(task, _worker_dist, _worker_config)


def day_tasks(timeline: VertexTimeline) -> list[DayTask]:
    """One task per timeline date."""
    return [
        DayTask(
            day=day,
            vertices=tuple(vertices),
            new_vertices=timeline.new_vertices(index),
        )
        for index, (day, vertices) in enumerate(
            zip(timeline.dates, timeline.cumulative_vertices)
        )
    ]


def analyze_timeline(
    timeline: VertexTimeline,
    config: RunConfig,
    run_logger: Optional[RunLogger] = None,
    timings: Optional[StageTimings] = None,
) -> AnalysisResult:
    """Analyze every day of ``timeline``; results come back in date order.

    With ``config.jobs > 1`` days are spread over a process pool.
    """
    run_logger = run_logger or RunLogger(uuid.uuid4().hex[:8])
    timings = timings or StageTimings()
    tasks = day_tasks(timeline)

    all_vertices = timeline.cumulative_vertices[-1] if timeline.cumulative_vertices else []
    with StageTimer(timings, "distances"):
        if all_vertices:
            dist = distance_matrix(timeline.points(all_vertices))
        else:
            dist = DistanceMatrix(np.zeros((0, 0)))

    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(
            max_workers=config.jobs,
            initializer=_init_worker,
            initargs=(np.asarray(dist.entries), config),
        ) as pool:
            results = list(pool.map(_analyze_in_worker, tasks))
    else:
        results = [analyze_day(task, dist, config) for task in tasks]

    for result in results:
        day = result.row.date.isoformat()
        for quantity, reason in result.fallbacks:
            run_logger.log_fallback(day, quantity, reason)
        for stage, seconds in result.timings.stage_timings.items():
            timings.record(stage, seconds)
        run_logger.log_day(day, result.row.n, result.row.d_km, result.edges)

    return AnalysisResult(
        rows=[result.row for result in results],
        communities=[result.communities for result in results],
        timings=timings,
        run_id=run_logger.run_id,
    )


def run_analysis(config: RunConfig) -> AnalysisResult:
    """Ingest, analyze and write the metrics and communities files of one run."""
    run_logger = RunLogger(uuid.uuid4().hex[:8])
    timings = StageTimings()
    run_logger.log_event("run_started", f"input={config.input_path}")

    with StageTimer(timings, "ingest"):
        timeline = load_timeline(
            config.input_path, config.start, config.end, config.exclusion_path
        )
    run_logger.log_event(
        "timeline_built",
        f"{len(timeline.dates)} days, {len(timeline.records)} regions",
    )

    result = analyze_timeline(timeline, config, run_logger=run_logger, timings=timings)

    with StageTimer(timings, "serialization"):
        write_metrics(result.rows, config.metrics_path)
        write_communities(result.communities, config.communities_path)

    run_logger.log_timings(timings.to_dict())
    return result
