"""Host inspection helpers used to size the worker pool."""

import psutil

from .logger import get_logger

logger = get_logger()


def default_worker_count(fallback=4):
    """
    Number of worker threads to use when the settings file does not say.
    
    Args:
        fallback (int): Value used when the CPU count cannot be read
        
    Returns:
        int: Physical core count, or logical count, or the fallback
    """
    try:
        count = psutil.cpu_count(logical=False) or psutil.cpu_count(logical=True)
    except Exception as e:
        logger.error(f"Error reading CPU count: {e}")
        count = None
    return max(1, count or fallback)


def available_memory_mb():
    """Available system memory in megabytes, for enumeration logging."""
    try:
        return psutil.virtual_memory().available // (1024 * 1024)
    except Exception as e:
        logger.error(f"Error reading memory information: {e}")
        return None
