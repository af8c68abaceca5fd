import csv
import json
import logging
from pathlib import Path
from typing import Optional, Union

import networkx as nx

from graphs.core_graph import Graph, build_graph
from models import HHKitError, Report

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


class ReportStore:
    """Writes graphs, label tables and reports under a base directory"""

    def __init__(self, base_dir: Optional[PathLike] = None):
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()

    def _resolve(self, path: PathLike) -> Path:
        resolved = Path(path)
        if not resolved.is_absolute():
            resolved = self.base_dir / resolved
        resolved.parent.mkdir(parents=True, exist_ok=True)
        return resolved

    @staticmethod
    def labels_path(path: Path) -> Path:
        """Sibling label table of an edge or JSON file"""
        return path.with_name(path.stem + ".labels.csv")

    def save_edges(self, g: Graph, path: PathLike) -> Path:
        """Write "p V E" followed by one "e u v" line per edge, 1-based"""
        target = self._resolve(path)
        try:
            with target.open("w") as handle:
                handle.write(f"p {g.vertex_count} {g.edge_count}\n")
                for u, v in g.edges():
                    handle.write(f"e {u + 1} {v + 1}\n")
            self.save_labels(g, self.labels_path(target))
            logger.info(f"Wrote {g.name} to {target}")
            return target
        except OSError as e:
            logger.error(f"Error writing {g.name} to {target}: {e}")
            raise

    def save_labels(self, g: Graph, path: PathLike) -> Path:
        """CSV "index,head,tail"; the head is blank for subset-labelled families"""
        target = self._resolve(path)
        with target.open("w", newline="") as handle:
            writer = csv.writer(handle)
            writer.writerow(["index", "head", "tail"])
            for v in range(g.vertex_count):
                label = g.label(v)
                head, sep, tail = label.partition(";")
                if not sep:
                    head, tail = "", label
                writer.writerow([v + 1, head, tail])
        return target

    def load_edges(self, path: PathLike) -> Graph:
        source = self._resolve(path)
        vertex_count = None
        edges = []
        try:
            with source.open() as handle:
                for line in handle:
                    fields = line.split()
                    if not fields or fields[0] == "c":
                        continue
                    if fields[0] == "p":
                        vertex_count, expected = int(fields[-2]), int(fields[-1])
                    elif fields[0] == "e":
                        edges.append((int(fields[1]) - 1, int(fields[2]) - 1))
        except (OSError, ValueError, IndexError) as e:
            logger.error(f"Error reading graph from {source}: {e}")
            raise HHKitError(f"unreadable edge file {source}: {e}")
        if vertex_count is None:
            raise HHKitError(f"{source} has no problem line")
        g = build_graph(vertex_count, edges, name=source.stem)
        if g.edge_count != expected:
            logger.warning(f"{source} declares {expected} edges but lists {g.edge_count}")
        return g

    def save_json(self, g: Graph, path: PathLike) -> Path:
        """networkx node-link JSON with the vertex labels as node attributes"""
        target = self._resolve(path)
        data = nx.node_link_data(g.to_networkx())
        with target.open("w") as handle:
            json.dump(data, handle, indent=2)
        logger.info(f"Wrote {g.name} as node-link JSON to {target}")
        return target

    def save_report(self, report: Report, path: PathLike) -> Path:
        target = self._resolve(path)
        try:
            target.write_text(report.model_dump_json(indent=2))
            logger.info(f"Saved {report.command} report to {target}")
            return target
        except OSError as e:
            logger.error(f"Error saving report to {target}: {e}")
            raise

    def load_report(self, path: PathLike) -> Report:
        return Report.model_validate_json(self._resolve(path).read_text())
