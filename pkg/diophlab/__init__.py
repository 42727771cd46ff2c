from .logging import LoggingHandler, setup_logging

__version__ = "0.1.0"
