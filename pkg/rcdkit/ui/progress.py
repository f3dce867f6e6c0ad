"""Stderr spinner for falsification campaigns and oracle scans."""

from typing import Optional

from rich.console import Console
from rich.live import Live
from rich.spinner import Spinner

console = Console(stderr=True)


class ProgressSpinner:
    """Context manager; silent unless stderr is a terminal."""

    def __init__(self, message: str = "Working..."):
        self._spinner = Spinner("dots", text=message, style="magenta")
        self._live: Optional[Live] = None

    def __enter__(self) -> "ProgressSpinner":
        if console.is_terminal:
            self._live = Live(self._spinner, console=console, transient=True)
            self._live.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        live, self._live = self._live, None
        if live is not None:
            live.stop()
