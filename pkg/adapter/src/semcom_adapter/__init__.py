from .backends import CopyRealizer, HashEmbedder
from .worker import handle, main, serve

__version__ = "0.1.0"

__all__ = ["CopyRealizer", "HashEmbedder", "handle", "main", "serve", "__version__"]
