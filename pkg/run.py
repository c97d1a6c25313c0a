# ParetoForge - Quasi-Newton methods and benchmarks for multiobjective optimization.
# Copyright (C) 2026  The ParetoForge contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU Affero General Public License as
# published by the Free Software Foundation, either version 3 of the
# License, or (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU Affero General Public License for more details.
#
# You should have received a copy of the GNU Affero General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

"""
Central start script for ParetoForge.
Runs the bench command line from the repository root, e.g.

    python run.py run --problems BK1,JOS1a --starts 200
    python run.py serve --port 23980
"""

import sys
from pathlib import Path

PROJECT_ROOT = Path(__file__).parent.resolve()
BENCH_DIR = PROJECT_ROOT / "bench"


def main() -> int:
    """Put the bench package on the import path and delegate to its CLI."""
    if not BENCH_DIR.is_dir():
        print(f"[ERROR] bench directory not found at {BENCH_DIR}", file=sys.stderr)
        return 1
    sys.path.insert(0, str(BENCH_DIR))

    from run import main as bench_main

    return bench_main(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
