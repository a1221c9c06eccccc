"""Command line: run the service or render an offline report."""

from __future__ import annotations

from pathlib import Path
from typing import Optional

import click
import uvicorn

from .config import load_config
from .persistence import load_store
from .report import write_report
from .service import DEFAULT_LEARNER, create_app
from .store import CurationStore


@click.group()
def main():
    """Curation, learning stories, and activity reports."""


@main.command()
@click.option("--config", "config_path", type=click.Path(exists=True, path_type=Path), default=None,
              help="YAML config file.")
@click.option("--listen", default=None, help="host:port to bind (overrides config).")
@click.option("--data", "data_path", type=click.Path(path_type=Path), default=None,
              help="State file path (overrides config).")
@click.option("--no-provider", is_flag=True, default=False,
              help="Ignore provider credentials and always use the deterministic fallback.")
def serve(config_path: Optional[Path], listen: Optional[str], data_path: Optional[Path], no_provider: bool):
    """Start the HTTP service."""
    config = load_config(config_path)
    if listen:
        config.listen_address = listen
    if data_path:
        config.data_path = data_path
    if no_provider:
        config.provider_credentials = None
        config.fallback_enabled = True
    host, port = config.host_and_port()
    app = create_app(config)
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--data", "data_path", required=True, type=click.Path(path_type=Path),
              help="State file to report on.")
@click.option("--learner", default=DEFAULT_LEARNER, show_default=True)
@click.option("--out", "out_dir", type=click.Path(path_type=Path), default=Path("report"),
              show_default=True, help="Directory for the report files.")
def report(data_path: Path, learner: str, out_dir: Path):
    """Render radar figure and activity summaries from a state file."""
    stores = load_store(data_path)
    store = stores.get(learner)
    if store is None:
        store = CurationStore()
        click.echo(f"no data for learner {learner!r}; writing an empty report")
    written = write_report(store, out_dir)
    for path in written:
        click.echo(f"wrote {path}")


if __name__ == "__main__":
    main()
