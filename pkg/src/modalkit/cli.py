"""Thin command-line client over the service layer.

Commands run in-process by default; with --server they POST the same request
payloads to a running instance instead.  Exit codes: 0 theorem, 1 non-theorem
(countermodel emitted), 2 undetermined, 3 usage or parse error.
"""
from __future__ import annotations

import json
import sys

import click
import httpx
from fastapi import HTTPException

from .formula import ParseError
from .service import app as _app  # noqa: F401  (imported for uvicorn factory)
from .service.app import (
    CORRESPONDENCE_SCHEMAS,
    handle_check_derivation,
    handle_correspond,
    handle_countermodel,
    handle_decide,
    handle_oracle,
)
from .service.schemas import (
    CheckDerivationRequest,
    CorrespondRequest,
    DecideRequest,
    OracleRequest,
)

_EXIT = {"theorem": 0, "non_theorem": 1, "undetermined": 2}


def _read_formula(text: str) -> str:
    """A leading @ makes the argument a file path holding the formula."""
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            return fh.read().strip()
    return text


def _call(server: str | None, path: str, payload: dict, local):
    if server:
        resp = httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
        if resp.status_code >= 400:
            detail = resp.json().get("detail", resp.text)
            raise click.ClickException(str(detail))
        return resp.json()
    try:
        return local().model_dump(by_alias=True)
    except HTTPException as e:
        raise click.ClickException(str(e.detail)) from None


_logic_option = click.option(
    "--logic", type=click.Choice(["K", "T", "K4", "GL"]), default="K", show_default=True
)
_server_option = click.option("--server", default=None, help="Base URL of a running service.")


@click.group()
def cli():
    """Decide modal theoremhood, build countermodels, check derivations."""


@cli.command()
@click.argument("formula")
@_logic_option
@click.option("--max-steps", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_server_option
def decide(formula, logic, max_steps, fmt, server):
    """Decide whether FORMULA is a theorem of the logic."""
    req = DecideRequest(logic=logic, formula=_read_formula(formula), max_steps=max_steps)
    data = _call(server, "/decide", req.model_dump(), lambda: handle_decide(req))
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    else:
        verdict = data["verdict"]
        if verdict == "theorem":
            click.echo(f"{logic} |- {req.formula}")
        elif verdict == "non_theorem":
            click.echo(f"{logic} |/- {req.formula}")
            click.echo(f"countermodel: {json.dumps(data['countermodel'])}")
            click.echo(f"falsified at world {data['world']}")
        else:
            click.echo(f"undetermined after {data['steps']} steps")
    return _EXIT[data["verdict"]]


@cli.command()
@click.argument("formula")
@_logic_option
@click.option("--max-steps", type=click.IntRange(min=1), default=10_000, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text")
@_server_option
def countermodel(formula, logic, max_steps, fmt, server):
    """Search for a countermodel to FORMULA in the logic."""
    req = DecideRequest(logic=logic, formula=_read_formula(formula), max_steps=max_steps)
    data = _call(server, "/countermodel", req.model_dump(), lambda: handle_countermodel(req))
    verdict = data["verdict"]
    if verdict != "non_theorem":
        click.echo("theorem: no countermodel exists" if verdict == "theorem"
                   else "undetermined: no countermodel found within the step bound")
        return _EXIT[verdict]
    if fmt == "dot":
        click.echo(data["dot"])
    elif fmt == "json":
        click.echo(json.dumps({"countermodel": data["countermodel"],
                               "world": data["world"]}, indent=2))
    else:
        click.echo(f"countermodel: {json.dumps(data['countermodel'])}")
        click.echo(f"falsified at world {data['world']}")
    return _EXIT[verdict]


@cli.command()
@click.argument("formula")
@_logic_option
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@_server_option
def oracle(formula, logic, fmt, server):
    """Cross-check FORMULA against the canonical-model oracle."""
    req = OracleRequest(logic=logic, formula=_read_formula(formula))
    data = _call(server, "/oracle", req.model_dump(), lambda: handle_oracle(req))
    if fmt == "json":
        click.echo(json.dumps(data, indent=2))
    elif data["verdict"] == "theorem":
        click.echo(f"oracle: {logic} |- {req.formula}")
    else:
        click.echo(f"oracle: {logic} |/- {req.formula}")
        click.echo(f"countermodel: {json.dumps(data['countermodel'])}")
        click.echo(f"falsified at world {data['world']}")
    return _EXIT[data["verdict"]]


@cli.command("check-derivation")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_logic_option
@_server_option
def check_derivation_cmd(path, logic, server):
    """Check the derivation stored as JSON at PATH.

    Schema: {"hypotheses": [...], "goal": "...", "steps":
    [{"f": "p --> p", "by": "KAxiom"}, {"f": "q", "by": "MP", "args": [0, 1]}]}.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    req = CheckDerivationRequest(
        logic=logic,
        hypotheses=raw.get("hypotheses", []),
        goal=raw.get("goal"),
        steps=raw.get("steps", []),
    )
    data = _call(server, "/check-derivation", req.model_dump(),
                 lambda: handle_check_derivation(req))
    if data["ok"]:
        click.echo("derivation checks")
        return 0
    click.echo(f"derivation fails at step {data['step']}: {data['reason']}")
    return 1


@cli.command()
@click.option("--schema", "schema_name",
              type=click.Choice(sorted(CORRESPONDENCE_SCHEMAS)), default=None)
@click.option("--formula", default=None, help="Schema text with exactly one atom.")
@click.option("--property", "properties", multiple=True,
              help="Frame property name, repeatable.")
@click.option("--max-worlds", type=click.IntRange(min=1), default=3, show_default=True)
@_server_option
def correspond(schema_name, formula, properties, max_worlds, server):
    """Verify a schema/frame-property correspondence up to a world bound."""
    req = CorrespondRequest(
        schema=schema_name, formula=formula,
        properties=list(properties) or None, max_worlds=max_worlds,
    )
    data = _call(server, "/correspond", req.model_dump(by_alias=True),
                 lambda: handle_correspond(req))
    state = "holds" if data["holds"] else "FAILS"
    click.echo(f"correspondence {data['schema']} ~ {data['properties']} "
               f"{state} up to {max_worlds} worlds")
    return 0 if data["holds"] else 1


@cli.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("modalkit.service:app", host=host, port=port)
    return 0


def main(argv: list[str] | None = None) -> None:
    try:
        code = cli.main(args=argv, standalone_mode=False)
    except click.UsageError as e:
        click.echo(f"error: {e.format_message()}", err=True)
        sys.exit(3)
    except click.ClickException as e:
        click.echo(f"error: {e.message}", err=True)
        sys.exit(3)
    except ParseError as e:
        click.echo(f"parse error: {e}", err=True)
        sys.exit(3)
    except click.exceptions.Abort:
        sys.exit(3)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()
