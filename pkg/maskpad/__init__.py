"""Package level information
"""

__version__ = "1.0.1"
