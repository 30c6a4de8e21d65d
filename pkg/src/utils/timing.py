"""Wall-clock timing and ETA utilities."""

import time
from collections import deque


class Stopwatch:
    """Measures a command's wall time and the pace of repeated work units."""
    
    def __init__(self, max_samples=10):
        """
        Initialize the stopwatch.
        
        Args:
            max_samples (int): Maximum number of work-unit durations to keep
        """
        self.unit_times = deque(maxlen=max_samples)
        self.started_at = None
        self.stopped_at = None
    
    def start(self):
        """Start (or restart) the overall clock."""
        self.started_at = time.perf_counter()
        self.stopped_at = None
        return self
    
    def stop(self):
        """Freeze the overall clock and return elapsed seconds."""
        self.stopped_at = time.perf_counter()
        return self.elapsed()
    
    def elapsed(self):
        """Elapsed seconds since start, or 0.0 if never started."""
        if self.started_at is None:
            return 0.0
        end = self.stopped_at if self.stopped_at is not None else time.perf_counter()
        return end - self.started_at
    
    def record_unit(self, duration):
        """Record a duration measured elsewhere (e.g. in a worker thread)."""
        self.unit_times.append(duration)
    
    def get_eta_string(self, remaining_count):
        """
        Get formatted ETA string.
        
        Args:
            remaining_count (int): Number of units remaining
            
        Returns:
            str: Formatted ETA string or empty if not enough data
        """
        if len(self.unit_times) < 3 or remaining_count == 0:
            return ""
        
        avg_time = sum(self.unit_times) / len(self.unit_times)
        total_seconds = avg_time * remaining_count
        
        # Don't show ETA for less than a minute
        if total_seconds < 60:
            return ""
        
        minutes, _ = divmod(total_seconds, 60)
        hours, minutes = divmod(minutes, 60)
        
        return f"ETA: {int(hours):02}:{int(minutes):02}"
    
    def reset(self):
        """Reset all tracking data."""
        self.unit_times.clear()
        self.started_at = None
        self.stopped_at = None
