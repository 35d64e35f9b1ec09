"""Loading animations and progress indicators"""
from contextlib import nullcontext
from typing import Optional

from rich.console import Console
from rich.progress import BarColumn, MofNCompleteColumn, Progress, SpinnerColumn, TextColumn

from brauer_cli.config import Config

# stdout carries results only
console = Console(stderr=True)


class LoadingAnimations:
    """Spinners and progress bars on stderr, silent when stderr is not a terminal"""

    @classmethod
    def simple_spinner(cls, message: Optional[str] = None, spinner_type: Optional[str] = None):
        """Create a simple spinner animation"""
        if not console.is_terminal:
            return nullcontext()
        if message is None:
            message = Config.get_random_working_message()
        return console.status(f"[bold cyan]{message}[/bold cyan]",
                              spinner=spinner_type or Config().SPINNER_STYLE)

    @classmethod
    def progress_bar(cls) -> Progress:
        """Create a progress bar for longer operations"""
        return Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            MofNCompleteColumn(),
            console=console,
            transient=True,
            disable=not console.is_terminal,
        )


def show_working_animation(message: Optional[str] = None):
    """Context manager for a spinner during a long computation"""
    return LoadingAnimations.simple_spinner(message)
