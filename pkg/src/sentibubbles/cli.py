"""Operator entry point: ingest dumps, build topic models, serve, query.

One binary with subcommands; every tunable is a flag with an environment
variable override (prefix ``SENTIBUBBLES_``, e.g. ``SENTIBUBBLES_SERVE_LISTEN``).
Precedence: flag > environment > default.  Exit codes: 0 success,
1 operational error, 2 usage error.
"""

from __future__ import annotations

import socket
import sys
from datetime import date
from pathlib import Path

import click

from . import service as service_mod
from .entities import CatalogError, load_catalog
from .preprocess import PreprocessConfig
from .sentiment import LexiconError, load_lexicon
from .store import IngestReport, RecordStore, ingest_dump
from .topics import (
    LdaParams,
    build_scoped_models,
    load_models,
    save_models,
    scope_labels,
)

SECTIONS = ("bubbles", "trend", "topics", "tweets")


def _open_existing_store(store_path: str) -> RecordStore:
    if not Path(store_path).exists():
        raise click.ClickException(f"store not found: {store_path}")
    return RecordStore(store_path)


def _parse_date_flag(value: str | None, flag: str) -> date | None:
    if value is None:
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise click.ClickException(f"{flag} must be an ISO date, got {value!r}")


@click.group(context_settings={"auto_envvar_prefix": "SENTIBUBBLES"})
def main():
    """Entity-centric daily text analytics: bubbles, topics, trends."""


@main.command()
@click.option("--catalog", "catalog_path", required=True, type=click.Path(), help="Entity catalog (JSON Lines).")
@click.option("--store", "store_path", required=True, type=click.Path(), help="Record store path (created if absent).")
@click.argument("dumps", nargs=-1, required=True, type=click.Path())
def ingest(catalog_path: str, store_path: str, dumps: tuple[str, ...]):
    """Ingest newline-delimited record dumps into the store.

    Malformed lines are skipped and counted, not fatal; the merged report is
    printed as JSON.
    """
    try:
        with open(catalog_path, "rb") as handle:
            catalog = load_catalog(handle)
    except FileNotFoundError:
        raise click.ClickException(f"catalog not found: {catalog_path}")
    except CatalogError as exc:
        raise click.ClickException(f"invalid catalog: {exc}")

    try:
        store = RecordStore(store_path)
    except Exception as exc:
        raise click.ClickException(f"cannot open store {store_path!r}: {exc}")
    report = IngestReport()
    try:
        for dump_path in dumps:
            try:
                with open(dump_path, "rb") as handle:
                    report = report.merged(ingest_dump(handle, catalog, store))
            except FileNotFoundError:
                raise click.ClickException(f"dump not found: {dump_path}")
            except OSError as exc:
                raise click.ClickException(f"cannot read dump {dump_path!r}: {exc}")
    finally:
        store.close()
    click.echo(service_mod.encode_json(report.as_dict()).decode("utf-8"))


@main.command()
@click.option("--store", "store_path", required=True, type=click.Path())
@click.option("--model-dir", required=True, type=click.Path(), help="Directory for serialized model files.")
@click.option("--mode", type=click.Choice(["global", "category", "entity", "all"]), default="all", show_default=True)
@click.option("--from", "from_str", default=None, help="Range start (ISO date); default: earliest stored day.")
@click.option("--to", "to_str", default=None, help="Range end (ISO date); default: latest stored day.")
@click.option("--topics", "n_topics", default=10, show_default=True, help="Number of topics K.")
@click.option("--alpha", default=None, type=float, help="Document-topic concentration; default 50/K.")
@click.option("--beta", default=0.01, show_default=True, type=float, help="Topic-word concentration.")
@click.option("--iters", default=1000, show_default=True, help="Gibbs sweeps.")
@click.option("--burn-in", default=200, show_default=True, help="Sweeps ignored before estimation.")
@click.option("--seed", default=0, show_default=True, help="Sampler seed (64-bit unsigned).")
def build(store_path, model_dir, mode, from_str, to_str, n_topics, alpha, beta, iters, burn_in, seed):
    """Fit topic models over the stored records and write model files."""
    store = _open_existing_store(store_path)
    try:
        catalog = store.load_catalog()
        if len(catalog) == 0:
            raise click.ClickException("store has no catalog; run ingest first")
        stored_range = store.date_range()
        if stored_range is None:
            raise click.ClickException("store contains no records")
        from_date = _parse_date_flag(from_str, "--from") or stored_range[0]
        to_date = _parse_date_flag(to_str, "--to") or stored_range[1]
        if from_date > to_date:
            raise click.ClickException(
                f"--from {from_date} is after --to {to_date}"
            )
        try:
            params = LdaParams(
                n_topics=n_topics,
                alpha=alpha,
                beta=beta,
                iterations=iters,
                burn_in=burn_in,
                seed=seed,
            )
        except ValueError as exc:
            raise click.ClickException(str(exc))

        config = PreprocessConfig.load_default()
        modes = ["global", "category", "entity"] if mode == "all" else [mode]
        models = {}
        for one_mode in modes:
            built = build_scoped_models(
                one_mode, (from_date, to_date), store, catalog, config, params
            )
            for label in scope_labels(one_mode, catalog):
                if label not in built:
                    click.echo(
                        f"warning: scope {label} has no documents in range; skipped",
                        err=True,
                    )
            models.update(built)
        if not models:
            raise click.ClickException(
                "no scope produced a non-empty corpus; nothing to build"
            )
        paths = save_models(models, model_dir)
        for scope, path in zip(sorted(models), paths):
            model = models[scope]
            click.echo(
                f"{model.scope}: {len(model.doc_keys)} documents, "
                f"{len(model.vocabulary)} terms, K={model.params.n_topics} "
                f"-> {path}"
            )
    finally:
        store.close()


def _load_snapshot(store_path: str, model_dir: str, lexicon_path: str) -> service_mod.Snapshot:
    store = _open_existing_store(store_path)
    catalog = store.load_catalog()
    if len(catalog) == 0:
        store.close()
        raise click.ClickException("store has no catalog; run ingest first")
    if not Path(model_dir).is_dir():
        store.close()
        raise click.ClickException(f"model directory not found: {model_dir}")
    try:
        models = load_models(model_dir)
    except ValueError as exc:
        store.close()
        raise click.ClickException(str(exc))
    try:
        with open(lexicon_path, "rb") as handle:
            lexicon = load_lexicon(handle)
    except FileNotFoundError:
        store.close()
        raise click.ClickException(f"lexicon not found: {lexicon_path}")
    except LexiconError as exc:
        store.close()
        raise click.ClickException(f"invalid lexicon: {exc}")
    return service_mod.Snapshot(
        catalog=catalog,
        store=store,
        models=models,
        lexicon=lexicon,
        config=PreprocessConfig.load_default(),
    )


@main.command()
@click.option("--store", "store_path", required=True, type=click.Path())
@click.option("--model-dir", required=True, type=click.Path())
@click.option("--lexicon", "lexicon_path", required=True, type=click.Path())
@click.option("--listen", default="127.0.0.1:8080", show_default=True, help="host:port to bind.")
@click.option("--ui-dir", default=None, type=click.Path(), help="Serve this static UI bundle at /.")
def serve(store_path, model_dir, lexicon_path, listen, ui_dir):
    """Serve the query API (long-running; Ctrl-C for clean shutdown)."""
    import uvicorn

    host, _, port_str = listen.rpartition(":")
    if not host or not port_str.isdigit():
        raise click.ClickException(f"--listen must be host:port, got {listen!r}")
    port = int(port_str)

    snapshot = _load_snapshot(store_path, model_dir, lexicon_path)
    app = service_mod.create_app(snapshot)
    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        if not Path(ui_dir).is_dir():
            raise click.ClickException(f"UI directory not found: {ui_dir}")
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    # Fail with a clean message before handing off to the server loop.
    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        raise click.ClickException(f"cannot bind {listen}: {exc}")
    finally:
        probe.close()

    click.echo(
        f"ready: {len(snapshot.catalog)} entities, {len(snapshot.models)} models; "
        f"listening on http://{host}:{port}",
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")


@main.command()
@click.option("--store", "store_path", required=True, type=click.Path())
@click.option("--model-dir", required=True, type=click.Path())
@click.option("--lexicon", "lexicon_path", required=True, type=click.Path())
@click.option("--section", required=True, type=click.Choice(SECTIONS))
@click.argument("entity_id")
@click.option("--date", "date_str", default=None, help="Day (ISO date); bubbles/topics/tweets.")
@click.option("--from", "from_str", default=None, help="Trend range start (ISO date).")
@click.option("--to", "to_str", default=None, help="Trend range end (ISO date).")
@click.option("--term", default=None, help="Tweets: filter by pre-processed token.")
@click.option("--limit", default=None, type=int, help="Bubbles/tweets: maximum items.")
@click.option("--mode", default=None, type=click.Choice(list(service_mod.MODES)), help="Topics: model scoping mode.")
@click.option("--n-topics", default=None, type=int, help="Topics: how many topics.")
@click.option("--n-words", default=None, type=int, help="Topics: words per topic.")
def query(store_path, model_dir, lexicon_path, section, entity_id, date_str,
          from_str, to_str, term, limit, mode, n_topics, n_words):
    """Print one API section for an entity; bytes equal the endpoint body."""
    snapshot = _load_snapshot(store_path, model_dir, lexicon_path)
    try:
        if section == "bubbles":
            payload = service_mod.bubbles_payload(snapshot, entity_id, date_str, limit)
        elif section == "trend":
            payload = service_mod.trend_payload(snapshot, entity_id, from_str, to_str)
        elif section == "topics":
            payload = service_mod.topics_payload(
                snapshot, entity_id, date_str, mode, n_topics, n_words
            )
        else:
            payload = service_mod.tweets_payload(
                snapshot, entity_id, date_str, term, limit
            )
    except service_mod.ApiError as exc:
        raise click.ClickException(f"{exc.code}: {exc.message}")
    finally:
        snapshot.store.close()
    sys.stdout.buffer.write(service_mod.encode_json(payload))
    sys.stdout.buffer.flush()


if __name__ == "__main__":
    main()
