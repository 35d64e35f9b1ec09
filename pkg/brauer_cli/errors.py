"""Error hierarchy, CLI error rendering and input validation helpers"""
import json
import os
from functools import wraps
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional

from rich.console import Console
from rich.markup import escape
from rich.panel import Panel

# Diagnostics never go to stdout
console = Console(stderr=True)


class BrauerError(Exception):
    """Base exception for Brauer toolkit errors"""
    code = "error"
    exit_code = 1
    title = "❌ Error"

    def __init__(self, message: str = "", code: Optional[str] = None,
                 details: Optional[List[str]] = None):
        if code:
            self.code = code
        super().__init__(message or self.code)
        self.details = list(details or [])

    def to_dict(self) -> Dict[str, Any]:
        """Machine-readable diagnostic"""
        payload: Dict[str, Any] = {"error": self.code, "message": str(self)}
        if self.details:
            payload["details"] = self.details
        return payload


class ValidationError(BrauerError):
    """Raised when a complex violates a structural invariant"""
    code = "invalid-complex"
    title = "🧩 Invalid Complex"


class ParseError(BrauerError):
    """Raised for malformed input documents"""
    code = "parse-error"
    title = "📄 Parse Error"


class FileOperationError(BrauerError):
    """Raised for file operation failures"""
    code = "file-error"
    title = "📁 File Error"

    def __init__(self, message: str = "", code: Optional[str] = None,
                 details: Optional[List[str]] = None, operation: str = "read"):
        super().__init__(message, code, details)
        self.operation = operation


class InconsistentPartitionError(BrauerError):
    """Raised when A- and G-cycles cannot come from an oriented complex"""
    code = "inconsistent-partition"
    title = "🔀 Inconsistent Quiver"


class EdgeError(BrauerError):
    """Raised for unknown edges or moves on single-edge complexes"""
    code = "unknown-edge"
    exit_code = 2
    title = "✂️ Edge Error"


class NonzeroGenusError(BrauerError):
    """Raised when a genus-0 procedure receives a higher genus complex"""
    code = "nonzero-genus"
    exit_code = 3
    title = "🍩 Nonzero Genus"


class WrongTypeError(BrauerError):
    """Raised when a reduced form has the wrong type for an operation"""
    code = "wrong-type"
    exit_code = 4
    title = "🏷️ Wrong Type"


class HasLeavesError(WrongTypeError):
    """Raised when an all-loop graph is required but leaves are present"""
    code = "has-leaves"


class InfeasibleTargetError(BrauerError):
    """Raised when a double-perimeter target violates parity or sum rules"""
    code = "infeasible-target"
    exit_code = 4
    title = "🎯 Infeasible Target"


class SizeLimitError(BrauerError):
    """Raised when an instance is too large for an exhaustive computation"""
    code = "size-limit-exceeded"
    exit_code = 4
    title = "📏 Size Limit"


class SearchExhaustedError(BrauerError):
    """Raised when a bounded move search runs out of depth or budget"""
    code = "search-exhausted"
    exit_code = 4
    title = "🔎 Search Exhausted"


class ErrorHandler:
    """Centralized error reporting"""

    @staticmethod
    def report(error: BrauerError) -> None:
        """Render an error panel followed by a one-line JSON diagnostic"""
        body = f"[red]{error}[/red]"
        if error.details:
            body += "\n" + "\n".join(f"• {detail}" for detail in error.details)
        console.print(Panel(body, title=error.title, border_style="red"))
        console.print(json.dumps(error.to_dict(), sort_keys=True), markup=False,
                      highlight=False, soft_wrap=True)

    @staticmethod
    def handle_file_error(file_path: str, operation: str = "read",
                          details: Optional[List[str]] = None) -> None:
        """Provide helpful feedback for file errors"""
        path = Path(file_path)
        parent = path.parent
        body = f"[red]Cannot {operation} file:[/red] {file_path}"
        if details:
            body += "\n" + "\n".join(f"• {escape(detail)}" for detail in details)

        console.print(Panel(
            body,
            title=f"❌ File {operation.title()} Error",
            border_style="red"
        ))

        suggestions = []
        if not parent.exists():
            suggestions.append(f"• Directory '{parent}' does not exist")
        elif not os.access(parent, os.W_OK if operation == "write" else os.R_OK):
            suggestions.append(f"• No {operation} permission for directory '{parent}'")
        else:
            similar = [f.name for f in parent.glob(f"*{path.stem}*") if f.is_file()]
            if similar:
                suggestions.append("• Did you mean one of these?")
                suggestions.extend(f"  - {name}" for name in similar[:5])

        if suggestions:
            console.print("[yellow]💡 Suggestions:[/yellow]")
            for suggestion in suggestions:
                console.print(suggestion)


def handle_errors(fallback: Optional[int] = None):
    """Decorator turning toolkit errors into rendered diagnostics and exit codes"""
    def decorator(func: Callable[..., int]) -> Callable[..., int]:
        @wraps(func)
        def wrapper(*args, **kwargs) -> int:
            try:
                return func(*args, **kwargs)
            except FileOperationError as e:
                ErrorHandler.handle_file_error(str(e), e.operation, e.details)
                console.print(json.dumps(e.to_dict(), sort_keys=True), markup=False,
                              highlight=False, soft_wrap=True)
                return e.exit_code if fallback is None else fallback
            except BrauerError as e:
                ErrorHandler.report(e)
                return e.exit_code if fallback is None else fallback
            except KeyboardInterrupt:
                console.print("\n[magenta]Operation cancelled by user[/magenta]")
                return 130
            except Exception as e:
                console.print(Panel(
                    f"[red]Unexpected error:[/red] {e}\n"
                    "[yellow]Please report this issue if it persists[/yellow]",
                    title="❌ Error",
                    border_style="red"
                ))
                console.print(json.dumps({"error": "internal", "message": str(e)}),
                              markup=False, highlight=False, soft_wrap=True)
                return 1 if fallback is None else fallback
        return wrapper
    return decorator


class Validator:
    """Input validation utilities"""

    @staticmethod
    def validate_file_path(path: str, must_exist: bool = True) -> Dict[str, Any]:
        """Validate file path and return validation result"""
        result: Dict[str, Any] = {
            "valid": False,
            "path": None,
            "error": None,
            "suggestions": []
        }

        try:
            file_path = Path(path).expanduser().resolve()

            if must_exist and not file_path.is_file():
                result["error"] = f"File does not exist: {path}"
                parent = file_path.parent
                if parent.exists():
                    similar = [f.name for f in parent.glob(f"*{file_path.stem}*") if f.is_file()]
                    result["suggestions"] = similar[:5]
            else:
                result["valid"] = True
                result["path"] = file_path

        except OSError as e:
            result["error"] = str(e)

        return result

    @staticmethod
    def require_positive(name: str, value: int) -> int:
        """Reject non-positive integer options"""
        if value < 1:
            raise ParseError(f"{name} must be a positive integer, got {value}", code="bad-option")
        return value
