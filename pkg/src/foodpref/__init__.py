"""Food preference learning from food logs via word-embedding nearest-neighbor labeling."""

__version__ = "0.1.0"
