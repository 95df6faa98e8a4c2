"""Ingestion, synthetic signals, reports and the command-line front end."""

from zygmund.pipeline.runner import Runner, RunConfig, load_config
from zygmund.pipeline.signals import gen, ingest, write_signal

__all__ = ["RunConfig", "Runner", "gen", "ingest", "load_config", "write_signal"]
