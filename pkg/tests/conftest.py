import sys
from pathlib import Path

# lets test modules import the reference enumerators in oracle.py
sys.path.insert(0, str(Path(__file__).parent))
