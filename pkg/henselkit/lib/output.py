"""Result documents on stdout, diagnostics on stderr."""

from __future__ import annotations

import functools
import json
import logging
import sys
from collections.abc import Callable
from typing import Any, TypeVar

import click
from rich.console import Console
from rich.json import JSON
from rich.panel import Panel

from henselkit.lib.errors import HenselkitError
from henselkit.lib.theme import COLORS, HENSELKIT_THEME, get_border_style, verdict_style

_LOG = logging.getLogger(__name__)

F = TypeVar("F", bound=Callable[..., Any])

INTERNAL_EXIT_CODE = 1


def describe_unexpected(err: Exception) -> str:
    """``Type: first line`` for an exception that is not a library error."""
    lines = str(err).strip().splitlines()
    return f"{type(err).__name__}: {lines[0]}" if lines else type(err).__name__


def dumps(document: dict[str, Any]) -> str:
    return json.dumps(document, indent=2, ensure_ascii=False)


def emit(document: dict[str, Any], fmt: str = "json", title: str | None = None) -> None:
    """Write ``document``; identical documents give identical json bytes."""
    text = dumps(document)
    if fmt == "pretty":
        console = Console(theme=HENSELKIT_THEME)
        console.print(
            Panel(
                JSON(text),
                title=f"[{COLORS['primary']}]{title or 'henselkit'}[/{COLORS['primary']}]",
                border_style=get_border_style(verdict_style(document)),
            )
        )
        return
    click.echo(text)


def reports_errors(func: F) -> F:
    """Turn library errors into ``❌ Name: message`` on stderr and the matching exit code.

    Anything else becomes ``❌ InternalError: ...`` with exit 1.
    """

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except HenselkitError as err:
            _LOG.debug("command failed", exc_info=True)
            click.echo(f"❌ {err.describe()}", err=True)
            sys.exit(err.exit_code)
        except (click.ClickException, click.exceptions.Exit, click.Abort):
            raise
        except Exception as err:
            _LOG.debug("unexpected failure", exc_info=True)
            click.echo(f"❌ InternalError: {describe_unexpected(err)}", err=True)
            sys.exit(INTERNAL_EXIT_CODE)

    return wrapper  # type: ignore[return-value]
