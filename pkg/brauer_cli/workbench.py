"""
Brauer toolkit - command handlers behind the CLI
"""
import logging
from typing import Any, Optional

from rich.console import Console
from rich.table import Table

from brauer_cli.algebra import build_algebra, center_formula, center_oracle, nilpotency_multiset
from brauer_cli.animations import LoadingAnimations, show_working_animation
from brauer_cli.config import Config
from brauer_cli.errors import Validator, handle_errors
from brauer_cli.file_handler import FileHandler, to_dot
from brauer_cli.fixtures import FixtureCatalog
from brauer_cli.genus0 import decide_equivalent
from brauer_cli.invariants import signature
from brauer_cli.orbit import CENSUS_FIELDS, census, explore
from brauer_cli.parser import ComplexDocument, dumps
from brauer_cli.quiver import derive_quiver
from brauer_cli.tilting import apply_move, build_tilting_complex, endomorphism_check, hom_vanishing_report

logger = logging.getLogger(__name__)

# results only; diagnostics and animations use stderr
console = Console()
status = Console(stderr=True)


class BrauerWorkbench:
    """One handler per subcommand; every handler returns the process exit code"""

    def __init__(self, config: Optional[Config] = None, plain: bool = False):
        """Initialize the workbench"""
        self.config = config or Config()
        self.plain = plain
        self.files = FileHandler(self.config)

    def emit(self, data: Any) -> None:
        """Write a JSON result to stdout"""
        text = dumps(data, self.config.JSON_INDENT)
        if self.config.PRETTY and not self.plain and console.is_terminal:
            console.print_json(text)
        else:
            self.emit_text(text)

    def emit_text(self, text: str) -> None:
        console.print(text, markup=False, highlight=False, soft_wrap=True)

    def note(self, message: str) -> None:
        if not self.plain:
            status.print(message)

    @handle_errors()
    def invariants(self, path: str) -> int:
        """Invariant signature of a complex"""
        self.emit(signature(self.files.read_complex(path)).to_dict())
        return 0

    @handle_errors()
    def transform(self, path: str, edge: int, out: Optional[str] = None) -> int:
        """Apply the tilting move at one edge"""
        b = self.files.read_complex(path)
        moved, move = apply_move(b, edge)
        if out:
            self.files.write_complex(out, moved)
            self.note(f"[green]✅ Type {move.type.value} move on edge {edge} written to {out}[/green]")
            self.emit(move.to_dict())
        else:
            self.emit(ComplexDocument.from_complex(moved).to_dict())
        return 0

    @handle_errors()
    def tilting(self, path: str, edge: int) -> int:
        """The tilting complex at an edge with its Hom-vanishing and End checks"""
        b = self.files.read_complex(path)
        with show_working_animation():
            tc = build_tilting_complex(b, edge)
            nonzero = hom_vanishing_report(tc)
            report = endomorphism_check(b, edge, self.config)
        data = tc.to_dict()
        data["hom_nonzero"] = [{"from": str(j), "to": str(k), "shift": s, "dim": d} for j, k, s, d in nonzero]
        data["endomorphism"] = report.to_dict()
        self.emit(data)
        return 0

    @handle_errors()
    def equiv(self, first: str, second: str, witness: bool = False) -> int:
        """Genus-0 chain equivalence verdict"""
        b1 = self.files.read_complex(first)
        b2 = self.files.read_complex(second)
        with show_working_animation("🔍 Searching moves..." if witness else None):
            verdict = decide_equivalent(b1, b2, witness, self.config)
        self.emit(verdict.to_dict())
        return 0

    @handle_errors()
    def orbit(self, path: str, budget: Optional[int] = None) -> int:
        """Breadth-first orbit under tilting moves"""
        if budget is not None:
            Validator.require_positive("--budget", budget)
        b = self.files.read_complex(path)
        with show_working_animation():
            report = explore(b, budget, self.config)
        if report.budget_exhausted:
            self.note(f"[yellow]⚠️ Orbit budget of {budget or self.config.ORBIT_BUDGET} complexes reached[/yellow]")
        self.emit(report.to_dict())
        return 0

    @handle_errors()
    def census(self, edges: int, mult: int, csv_path: Optional[str] = None) -> int:
        """Classes and orbits per invariant signature"""
        Validator.require_positive("--edges", edges)
        Validator.require_positive("--mult", mult)
        with LoadingAnimations.progress_bar() as progress:
            task = progress.add_task("🌳 Orbits per signature", total=None)

            def advance(done: int, total: int) -> None:
                progress.update(task, completed=done, total=total)

            rows = census(edges, mult, config=self.config, progress=advance)
        if csv_path:
            self.files.write_csv(csv_path, [r.to_row() for r in rows], CENSUS_FIELDS)
            self.note(f"[green]💾 Census written to {csv_path}[/green]")
        self.emit([r.to_dict() for r in rows])
        return 0

    @handle_errors()
    def center(self, path: str) -> int:
        """Symbolic center basis next to the linear-algebra oracle"""
        q = derive_quiver(self.files.read_complex(path))
        formula = center_formula(q)
        with show_working_animation("📐 Reducing matrices..."):
            table = build_algebra(q)
            oracle = center_oracle(table)
            nilpotency = nilpotency_multiset(table, oracle)
        self.emit({
            "formula": formula.to_dict(),
            "oracle_dim": len(oracle),
            "oracle_nilpotency": nilpotency,
            "algebra_dim": table.dim,
            "agree": len(oracle) == formula.dim_Z and nilpotency == formula.nilpotency,
        })
        return 0

    @handle_errors()
    def quiver(self, path: str) -> int:
        self.emit(derive_quiver(self.files.read_complex(path)).to_dict())
        return 0

    @handle_errors()
    def export_dot(self, path: str) -> int:
        self.emit_text(to_dot(self.files.read_complex(path)))
        return 0

    @handle_errors()
    def fixtures(self, name: Optional[str] = None) -> int:
        """List the fixtures, or print one as a dart-level document"""
        if name:
            self.emit(ComplexDocument.from_complex(FixtureCatalog.load(name, self.config)).to_dict())
            return 0
        described = FixtureCatalog.describe(self.config)
        if not self.plain and status.is_terminal:
            table = Table(title="📦 Fixtures", show_header=True)
            table.add_column("name", style="cyan")
            table.add_column("description")
            for fixture, text in described.items():
                table.add_row(fixture, text)
            status.print(table)
        self.emit(described)
        return 0
