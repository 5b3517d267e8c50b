"""
Battery report persistence.
Saves reports to JSON files under the results directory and summarises history.
"""

import json
import logging
from datetime import datetime
from pathlib import Path
from config import settings
from utils.helpers import generate_id


logger = logging.getLogger(__name__)


class ResultsManager:
    """
    Manages battery report persistence and retrieval.
    """

    def __init__(self, results_dir=None):
        """
        Initialize results manager.

        Args:
            results_dir (Path): Directory for results (default: from settings)
        """
        self.results_dir = Path(results_dir or settings.RESULTS_DIR)
        self.results_dir.mkdir(parents=True, exist_ok=True)

    def save_report(self, report):
        """
        Save a battery report to a JSON file.

        The stored document is the report dictionary plus 'saved_at' and 'run_id'.

        Args:
            report (BatteryReport): Report to save

        Returns:
            Path: Path to saved file, or None on failure
        """
        try:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            run_id = generate_id("run")
            filename = f"{settings.RESULT_FILE_PREFIX}{timestamp}_{run_id}{settings.RESULT_FILE_SUFFIX}"
            filepath = self.results_dir / filename

            data = report.to_dict()
            data['saved_at'] = datetime.now().isoformat()
            data['run_id'] = run_id
            with open(filepath, 'w') as f:
                json.dump(data, f, indent=2)

            logger.info(f"Saved battery report to {filepath}")
            self._prune()
            return filepath

        except OSError as e:
            logger.error(f"Error saving report: {e}")
            return None

    def _prune(self):
        files = self._result_files()
        for old in files[settings.MAX_STORED_RESULTS:]:
            try:
                old.unlink()
                logger.debug(f"Pruned old report {old.name}")
            except OSError as e:
                logger.warning(f"Could not remove {old}: {e}")

    def _result_files(self):
        return sorted(
            self.results_dir.glob(f"{settings.RESULT_FILE_PREFIX}*{settings.RESULT_FILE_SUFFIX}"),
            key=lambda p: p.stat().st_mtime,
            reverse=True
        )

    def load_results(self, limit=10):
        """
        Load recent battery reports, newest first.

        Args:
            limit (int): Maximum number of reports to load

        Returns:
            list: Report dictionaries
        """
        results = []
        for filepath in self._result_files()[:limit]:
            try:
                with open(filepath, 'r') as f:
                    results.append(json.load(f))
            except (OSError, ValueError) as e:
                logger.warning(f"Could not load {filepath}: {e}")
        return results

    def get_statistics(self):
        """
        Pass counts per source over stored reports.

        Returns:
            dict: source -> {'runs', 'passed', 'pass_rate'}
        """
        stats = {}
        for r in self.load_results(limit=settings.MAX_STORED_RESULTS):
            entry = stats.setdefault(r['source'], {'runs': 0, 'passed': 0})
            entry['runs'] += 1
            if r['overall_pass']:
                entry['passed'] += 1
        for entry in stats.values():
            entry['pass_rate'] = entry['passed'] / entry['runs'] * 100
        return stats

    def display_history(self, limit=10):
        """Display recent reports and per-source pass rates."""
        from utils.formatters import print_header, print_table, success, error, bold

        print_header("Battery History")

        recent = self.load_results(limit=limit)
        if not recent:
            print("No stored battery reports yet. Run 'test --save' to record one.")
            return

        rows = []
        for r in recent:
            status = success("PASS") if r['overall_pass'] else error("FAIL")
            rows.append([r.get('saved_at', '')[:19], r['source'], r['seed'], r['n_bits'], status])
        print_table(['Saved', 'Source', 'Seed', 'Bits', 'Status'], rows)
        print()

        print(bold("Pass rate by source:"))
        for source, entry in sorted(self.get_statistics().items()):
            print(f"  {source}: {entry['passed']}/{entry['runs']} ({entry['pass_rate']:.0f}%)")


# Global results manager
_results_manager = None


def get_results_manager():
    """
    Get global ResultsManager instance.

    Returns:
        ResultsManager: Global manager
    """
    global _results_manager
    if _results_manager is None:
        _results_manager = ResultsManager()
    return _results_manager
