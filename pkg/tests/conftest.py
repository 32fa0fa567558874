import pathlib
import sys

# let the suite run from a fresh checkout, before `pip install -e .`
sys.path.insert(0, str(pathlib.Path(__file__).resolve().parent.parent / "src"))
