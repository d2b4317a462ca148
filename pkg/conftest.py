import os
import logging

# Set URDIV_DEBUG=1 to see quantile and sampler debug logging in test runs.
if os.environ.get("URDIV_DEBUG"):
    logging.basicConfig(level=logging.DEBUG)
