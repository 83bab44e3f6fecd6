"""Command-line front door: serve the gateway or run pipeline stages in batch."""
from __future__ import annotations

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import click

from .config import ConfigError, load_config
from .punctuation import PunctuationError, RenderMode
from .runtime import Runtime
from .translation import LanguageTag, assemble_stream

EXIT_OK = 0
EXIT_PARTIAL = 1
EXIT_CONFIG = 2


def _build_runtime(config_path: str | None) -> Runtime:
    try:
        return Runtime.from_config(load_config(config_path))
    except (ConfigError, PunctuationError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def _dump(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, sort_keys=True, indent=2)


def _read_input(text: str | None, file: str | None) -> str:
    if (text is None) == (file is None):
        click.echo("exactly one of --text or --file is required", err=True)
        sys.exit(EXIT_CONFIG)
    if text is not None:
        return text
    try:
        return Path(file).read_text("utf-8")
    except OSError as exc:
        click.echo(f"cannot read {file}: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


config_option = click.option("--config", "config_path", type=click.Path(), default=None)
backend_option = click.option("--backend", default=None, help="Backend name override.")


@click.group()
def main() -> None:
    """Hanja document processing toolkit."""


@main.command()
@config_option
def serve(config_path):
    """Run the HTTP gateway until terminated."""
    import uvicorn

    from .gateway import create_app

    try:
        config = load_config(config_path)
        app = create_app(config)
    except (ConfigError, PunctuationError, ValueError) as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)
    click.echo(f"listening on http://{config.host}:{config.port}")
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="warning")
    except (OSError, SystemExit) as exc:
        click.echo(f"server failed to start: {exc}", err=True)
        sys.exit(EXIT_CONFIG)


def _run_tasks(runtime: Runtime, text: str, tasks: list[str], mode: RenderMode,
               target: LanguageTag, backend: str | None) -> dict:
    results: dict = {}
    for task in tasks:
        if task == "punctuate":
            out = runtime.punctuate(text, mode, backend)
            results["punctuate"] = {
                "labels": out["labels"],
                "rendered": out["rendered"],
                "offsets": out["offsets"],
                "stripped": out["stripped"],
                "mode": mode.value,
            }
        elif task == "ner":
            tags, spans = runtime.ner(text, backend)
            results["ner"] = {
                "tags": tags,
                "spans": [
                    {"start": s.start, "end": s.end, "type": s.etype.value}
                    for s in spans
                ],
            }
        elif task == "translate":
            deltas = runtime.translate_deltas(text, target, backend)
            results["translate"] = {
                "target": target.value,
                "text": assemble_stream(deltas),
            }
        else:
            raise ValueError(f"unknown task {task!r}")
    return results


def _collect_inputs(paths: tuple[str, ...]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            files.extend(p for p in sorted(path.rglob("*")) if p.is_file())
        else:
            files.append(path)
    return sorted(set(files))


@main.command()
@click.argument("inputs", nargs=-1, required=True, type=click.Path())
@click.option("--tasks", default="punctuate,ner,translate", show_default=True,
              help="Comma-separated ordered subset of punctuate,ner,translate.")
@click.option("--mode", default="Comprehensive", show_default=True)
@click.option("--target", default="Korean", show_default=True)
@click.option("--out", "out_dir", required=True, type=click.Path())
@click.option("--jobs", default=None, type=int, help="Worker pool size.")
@click.option("--report/--no-report", default=False,
              help="Also write summary.csv and matplotlib figures.")
@backend_option
@config_option
def batch(inputs, tasks, mode, target, out_dir, jobs, report, backend, config_path):
    """Process files through the pipeline, one JSON document per input."""
    runtime = _build_runtime(config_path)
    try:
        task_list = [t.strip() for t in tasks.split(",") if t.strip()]
        if not task_list or any(t not in ("punctuate", "ner", "translate") for t in task_list):
            raise ValueError(f"bad task list {tasks!r}")
        render_mode = RenderMode(mode)
        language = LanguageTag(target)
    except ValueError as exc:
        click.echo(f"configuration error: {exc}", err=True)
        sys.exit(EXIT_CONFIG)

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = _collect_inputs(inputs)

    def process(path: Path) -> tuple[dict, dict | None]:
        entry = {"input": str(path), "status": "ok"}
        try:
            text = path.read_text("utf-8").strip()
            doc = {
                "input": str(path),
                "text": text,
                "results": _run_tasks(runtime, text, task_list, render_mode,
                                      language, backend),
            }
        except Exception as exc:
            entry.update(status="error", error=str(exc))
            return entry, None
        return entry, doc

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        outcomes = list(pool.map(process, files))

    documents = []
    used_names: set[str] = set()
    for entry, doc in outcomes:
        if doc is None:
            continue
        name = Path(entry["input"]).stem
        candidate, n = name, 1
        while candidate in used_names:
            n += 1
            candidate = f"{name}_{n}"
        used_names.add(candidate)
        target_path = out / f"{candidate}.json"
        target_path.write_text(_dump(doc) + "\n", "utf-8")
        entry["output"] = target_path.name  # relative so reruns into other dirs compare equal
        documents.append(doc)

    summary_files = [entry for entry, _ in outcomes]
    failed = sum(1 for e in summary_files if e["status"] == "error")
    summary = {
        "total": len(summary_files),
        "succeeded": len(summary_files) - failed,
        "failed": failed,
        "files": summary_files,
    }
    (out / "summary.json").write_text(_dump(summary) + "\n", "utf-8")
    if report:
        from . import report as report_mod

        report_mod.write_summary_csv(out, summary_files)
        report_mod.write_figures(out, summary_files, documents)

    for entry in summary_files:
        status = entry["status"]
        line = f"{entry['input']}: {status}"
        if status == "error":
            line += f" ({entry['error']})"
        click.echo(line)
    click.echo(f"{summary['succeeded']}/{summary['total']} succeeded")
    sys.exit(EXIT_PARTIAL if failed else EXIT_OK)


def _single_task_command(task: str):
    @click.option("--text", default=None)
    @click.option("--file", default=None, type=click.Path())
    @click.option("--mode", default="Comprehensive", show_default=True)
    @click.option("--target", default="Korean", show_default=True)
    @backend_option
    @config_option
    def command(text, file, mode, target, backend, config_path):
        runtime = _build_runtime(config_path)
        source = _read_input(text, file).strip()
        try:
            render_mode = RenderMode(mode)
            language = LanguageTag(target)
        except ValueError as exc:
            click.echo(f"configuration error: {exc}", err=True)
            sys.exit(EXIT_CONFIG)
        try:
            if task == "glossary":
                entries = runtime.glossary_entries(source)
                result = {
                    "entries": [
                        {
                            "char": e.char,
                            "reading": e.reading,
                            "definitions": list(e.definitions),
                            "link": e.link,
                        }
                        for e in entries
                    ]
                }
            else:
                result = _run_tasks(
                    runtime, source, [task], render_mode, language, backend
                )[task]
        except Exception as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARTIAL)
        click.echo(_dump(result))

    command.__name__ = task
    return command


main.command(name="punctuate")(_single_task_command("punctuate"))
main.command(name="ner")(_single_task_command("ner"))
main.command(name="translate")(_single_task_command("translate"))
main.command(name="glossary")(_single_task_command("glossary"))


if __name__ == "__main__":
    main()
