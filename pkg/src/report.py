"""Mail-style report building and text rendering."""

from pathlib import Path
from typing import Any, Dict, List, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

from .models import Report, VisitedSite
from .simworld import MigrationOutcome


class ReportBuilder:
    """
    Accumulates the agent's displacements into a Report.

    Each site is filed under the category of its first migration outcome.
    The one exception is a visited site later found down, which is also
    listed as inaccessible.
    """

    def __init__(self, launch: str):
        self.report = Report(launch=launch)
        self._first_outcome: Dict[str, str] = {}

    def add_visit(self, site: str, users: List[str]) -> None:
        """Record a completed task; only the first visit of a site is kept."""
        first = self._first_outcome.setdefault(site, MigrationOutcome.ARRIVED)
        if first != MigrationOutcome.ARRIVED:
            return
        if all(entry.site != site for entry in self.report.visited):
            self.report.visited.append(VisitedSite(site=site, users=tuple(users)))

    def add_outcome(self, site: str, outcome: str) -> None:
        """Record a failed migration attempt."""
        first = self._first_outcome.setdefault(site, outcome)
        if outcome == MigrationOutcome.SITE_DOWN and first != MigrationOutcome.PROHIBITED:
            self._append_once(self.report.inaccessible, site)
        elif outcome == MigrationOutcome.PROHIBITED and first == MigrationOutcome.PROHIBITED:
            self._append_once(self.report.prohibited, site)

    def add_dysfunction(self, site: str) -> None:
        self._append_once(self.report.dysfunctions, site)

    def finish(self, halted_at: str, reason: str, steps: int) -> Report:
        self.report.halted_at = halted_at
        self.report.halt_reason = reason
        self.report.steps = steps
        return self.report

    @staticmethod
    def _append_once(items: List[str], site: str) -> None:
        if site not in items:
            items.append(site)


class TextRenderer:
    """Render reports and CLI tables from the Jinja2 templates."""

    def __init__(self, template_dir: Optional[str] = None):
        """
        Initialize the renderer.

        Args:
            template_dir: Directory containing Jinja2 templates
        """
        if template_dir is None:
            template_dir = Path(__file__).parent / "templates"

        self.template_dir = Path(template_dir)

        # Whitespace control keeps the report bit-exact
        self.jinja_env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            keep_trailing_newline=True,
            undefined=StrictUndefined,
        )

    def render(self, template_name: str, **context: Any) -> str:
        return self.jinja_env.get_template(template_name).render(**context)

    def render_report(self, report: Report) -> str:
        return self.render("report.txt.jinja2", report=report)


def render_report(report: Report, template_dir: Optional[str] = None) -> str:
    """
    Render a finalized report in the mail-style text format.

    Args:
        report: Finalized report
        template_dir: Optional template directory

    Returns:
        Report text with a trailing newline
    """
    return TextRenderer(template_dir).render_report(report)
