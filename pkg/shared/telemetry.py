"""
Census Metrics
==============

Prometheus metrics for census runs, kept in a private registry and written
to a text file at the end of a run (node-exporter textfile format).
"""

import logging
import os
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

from prometheus_client import CollectorRegistry, Counter, Gauge, Histogram, write_to_textfile

logger = logging.getLogger(__name__)

METRICS_ENV_VAR = "TROPLANAR_METRICS"


def metrics_enabled_from_env() -> bool:
    return os.getenv(METRICS_ENV_VAR, "false").strip().lower() in ("1", "true", "yes", "on")


class CensusMetrics:
    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.registry = CollectorRegistry()
        self.metrics: Dict[str, Any] = {}
        self._init_metrics()

    def _init_metrics(self):
        self.register_counter(
            "troplanar_triangulations_total",
            "Triangulations skeletonized during a census",
            ["regular"],
        )
        self.register_counter(
            "troplanar_polygons_skipped_total",
            "Polygons skipped because they exceed the lattice point limit",
        )
        self.register_gauge(
            "troplanar_distinct_skeletons",
            "Distinct skeleton certificates found by the last census",
        )
        self.register_histogram(
            "troplanar_polygon_seconds",
            "Time spent on one polygon",
            buckets=(0.01, 0.1, 0.5, 1, 5, 30, 120, 600),
        )

    def register_gauge(self, name: str, documentation: str, labelnames: Optional[List[str]] = None):
        if name not in self.metrics:
            self.metrics[name] = Gauge(name, documentation, labelnames=labelnames or [], registry=self.registry)

    def register_counter(self, name: str, documentation: str, labelnames: Optional[List[str]] = None):
        if name not in self.metrics:
            self.metrics[name] = Counter(name, documentation, labelnames=labelnames or [], registry=self.registry)

    def register_histogram(
        self,
        name: str,
        documentation: str,
        labelnames: Optional[List[str]] = None,
        buckets: Tuple[float, ...] = Histogram.DEFAULT_BUCKETS,
    ):
        if name not in self.metrics:
            self.metrics[name] = Histogram(
                name, documentation, labelnames=labelnames or [], registry=self.registry, buckets=buckets
            )

    def _metric(self, name: str, labels: Optional[Dict[str, str]]):
        metric = self.metrics[name]
        return metric.labels(**labels) if labels else metric

    def record_gauge(self, name: str, value: float, labels: Optional[Dict[str, str]] = None):
        if self.enabled and name in self.metrics:
            self._metric(name, labels).set(value)

    def increment_counter(self, name: str, value: float = 1.0, labels: Optional[Dict[str, str]] = None):
        if self.enabled and name in self.metrics:
            self._metric(name, labels).inc(value)

    def record_histogram(self, name: str, value: float, labels: Optional[Dict[str, str]] = None):
        if self.enabled and name in self.metrics:
            self._metric(name, labels).observe(value)

    # census hooks

    def triangulation(self, regular: bool):
        self.increment_counter("troplanar_triangulations_total", labels={"regular": str(regular).lower()})

    def skipped(self):
        self.increment_counter("troplanar_polygons_skipped_total")

    def polygon_done(self, seconds: float):
        self.record_histogram("troplanar_polygon_seconds", seconds)

    def distinct_skeletons(self, count: int):
        self.record_gauge("troplanar_distinct_skeletons", count)

    def value(self, name: str, labels: Optional[Dict[str, str]] = None) -> Optional[float]:
        return self.registry.get_sample_value(name, labels or {})

    def write(self, path: Union[str, Path]):
        if not self.enabled:
            logger.debug("Metrics disabled; nothing written")
            return
        write_to_textfile(str(path), self.registry)
        logger.info(f"Wrote census metrics to {path}")
