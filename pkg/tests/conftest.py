import os

# Single-threaded BLAS: our matrices are small enough that thread fan-out
# costs more than it saves, and the acceptance runtime is measured on one
# core.  Must be set before numpy first loads.
os.environ.setdefault("OPENBLAS_NUM_THREADS", "1")
os.environ.setdefault("OMP_NUM_THREADS", "1")
