"""Threading utilities for fanning work units out to background workers."""

import threading
import queue
import time
from .logger import get_logger

logger = get_logger()


class WorkFailure:
    """Carries an exception raised inside a worker back to the caller."""
    
    def __init__(self, index, error):
        self.index = index
        self.error = error


class WorkerManager:
    """Manages worker threads that map a function over independent work units."""
    
    def __init__(self, num_workers, worker_function, stop_event=None):
        """
        Initialize worker manager.
        
        Args:
            num_workers (int): Number of worker threads to create
            worker_function: Function applied to each work unit
            stop_event (threading.Event): Event to signal workers to stop
        """
        self.num_workers = max(1, int(num_workers))
        self.worker_function = worker_function
        self.stop_event = stop_event or threading.Event()
        self.worker_threads = []
        
        self.unit_queue = queue.Queue()
        self.result_queue = queue.Queue(maxsize=self.num_workers + 1)
        self.unit_durations = []
    
    def start_workers(self, units):
        """
        Start worker threads with a list of work units.
        
        Args:
            units (list): Work units; results are tagged with their position
        """
        self.stop_workers()
        self._clear_queues()
        
        for index, unit in enumerate(units):
            self.unit_queue.put((index, unit))
        
        self.worker_threads = []
        for _ in range(min(self.num_workers, max(1, len(units)))):
            thread = threading.Thread(
                target=self._worker_wrapper,
                daemon=True
            )
            thread.start()
            self.worker_threads.append(thread)
    
    def stop_workers(self):
        """Stop all worker threads."""
        self.stop_event.set()
        self._clear_unit_queue()
        
        for thread in self.worker_threads:
            if thread.is_alive():
                thread.join(timeout=1.0)
        
        self.worker_threads = []
        self.stop_event.clear()
    
    def _worker_wrapper(self):
        """Wrapper for worker function that handles queue management."""
        while not self.stop_event.is_set():
            try:
                index, unit = self.unit_queue.get(timeout=0.5)
            except queue.Empty:
                break
            
            started = time.perf_counter()
            try:
                result = self.worker_function(unit)
                self.result_queue.put((index, result))
            except Exception as e:
                logger.error(f"Worker error processing unit {index}: {e}")
                self.result_queue.put((index, WorkFailure(index, e)))
            finally:
                self.unit_durations.append(time.perf_counter() - started)
                self.unit_queue.task_done()
    
    def run_all(self, units, on_result=None):
        """
        Process every unit and return the results in unit order.
        
        Args:
            units (list): Work units
            on_result: Optional callback(index, result) invoked as results arrive
            
        Returns:
            list: worker_function(unit) for each unit, in input order
            
        Raises:
            The first exception raised by a worker, after all workers stop.
        """
        if not units:
            return []
        self.start_workers(units)
        collected = {}
        while len(collected) < len(units):
            item = self.get_result(timeout=0.5)
            if item is None:
                if not self.workers_active() and not self.has_results():
                    break
                continue
            index, result = item
            collected[index] = result
            if on_result is not None and not isinstance(result, WorkFailure):
                on_result(index, result)
        self.stop_workers()
        
        failures = [r for r in collected.values() if isinstance(r, WorkFailure)]
        if failures:
            raise failures[0].error
        if len(collected) < len(units):
            raise RuntimeError(f"Workers stopped after {len(collected)} of {len(units)} units")
        return [collected[i] for i in range(len(units))]
    
    def _clear_queues(self):
        """Clear all queues."""
        self._clear_unit_queue()
        while not self.result_queue.empty():
            try:
                self.result_queue.get_nowait()
            except queue.Empty:
                break
    
    def _clear_unit_queue(self):
        """Clear the pending unit queue."""
        while not self.unit_queue.empty():
            try:
                self.unit_queue.get_nowait()
            except queue.Empty:
                break
    
    def get_result(self, timeout=1.0):
        """
        Get a result from the result queue.
        
        Args:
            timeout (float): Timeout in seconds
            
        Returns:
            (index, result) or None if timeout
        """
        try:
            return self.result_queue.get(timeout=timeout)
        except queue.Empty:
            return None
    
    def has_results(self):
        """Check if there are results available."""
        return not self.result_queue.empty()
    
    def workers_active(self):
        """Check if any worker threads are still active."""
        return any(t.is_alive() for t in self.worker_threads)
