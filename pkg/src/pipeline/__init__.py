"""Analysis orchestration and result files."""

from src.pipeline.analyze import (
    AnalysisResult,
    DayTask,
    analyze_day,
    analyze_timeline,
    day_tasks,
    run_analysis,
)
from src.pipeline.storage import (
    read_communities,
    read_fit,
    read_metrics,
    read_projection,
    write_communities,
    write_fit,
    write_metrics,
    write_projection,
    write_summary,
)

__all__ = [
    "AnalysisResult",
    "DayTask",
    "analyze_day",
    "analyze_timeline",
    "day_tasks",
    "read_communities",
    "read_fit",
    "read_metrics",
    "read_projection",
    "run_analysis",
    "write_communities",
    "write_fit",
    "write_metrics",
    "write_projection",
    "write_summary",
]
