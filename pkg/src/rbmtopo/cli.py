"""Command-line interface: build, verify, amp, stats, export, fit, list-models."""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import models
from .clifford import (
    circuit_to_rbm, dense_simulate, format_circuit, parse_circuit, parse_stabilizers, projector_state,
    stabilizer_state_to_rbm,
)
from .errors import FitError, ParseError, ResourceError, StructureError, SynthesisError
from .phase_poly import ClosedFormState, fit_cubic_phase, format_closed_form
from .rbm import DenseState, amplitude, dense_cap, dense_state, dumps, loads, parse_bits
from .verify import check_bundle, network_stats, resource_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SYNTH = 0, 1, 2, 3

SIZE_FLAGS = ("lx", "ly", "l", "sites", "n", "k")


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_net(path: str):
    try:
        return loads(_read(path))
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not a network file: {exc}") from None


def _json_safe(meta: dict) -> dict:
    return {k: v for k, v in meta.items() if isinstance(v, (int, float, str, bool, list, dict, type(None)))}


# -- oracles rebuilt from metadata ----------------------------------------------------


def _stabilizer_oracle(strings: list[str], seed: int) -> DenseState:
    gens = models.StabilizerGenerators.from_strings(strings)
    n = gens.n
    if n > dense_cap():
        raise ResourceError(f"{n} qubits exceed the dense cap {dense_cap()}")
    start = np.zeros(1 << n, dtype=complex)
    start[0] = 1
    psi = projector_state(gens, start)
    if np.linalg.norm(psi) < 1e-8:
        rng = np.random.default_rng(seed)
        start = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
        psi = projector_state(gens, start)
    return DenseState(n, psi)


def bundle_from_meta(net, meta: dict, seed: int = 0) -> models.ModelBundle:
    """Rebuild the oracle recorded in a network file and attach it to ``net``."""
    source = meta.get("source")
    if source == "model":
        ref = models.build_model(meta["model"], **meta.get("params", {}))
        return models.ModelBundle(ref.name, net, ref.oracle_dense, ref.oracle_amplitude, ref.metadata, ref.sample_support)
    if source == "hypergraph":
        hg = models.Hypergraph(meta["n"], tuple(tuple(e) for e in meta["hyperedges"]))
        ref = models.hypergraph_state(hg)
        return models.ModelBundle(ref.name, net, ref.oracle_dense, ref.oracle_amplitude, ref.metadata, ref.sample_support)
    if source == "circuit":
        circ = parse_circuit(meta["circuit"])
        return models.ModelBundle("circuit", net, lambda: dense_simulate(circ), None, {})
    if source == "stabilizers":
        strings = meta["stabilizers"]
        return models.ModelBundle("stabilizers", net, lambda: _stabilizer_oracle(strings, seed), None, {})
    raise UsageError("file carries no oracle metadata; pass --oracle FILE")


def bundle_from_file(net, path: str) -> models.ModelBundle:
    """Oracle from a dense amplitude file or another network file."""
    try:
        d = json.loads(_read(path))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not JSON: {exc}") from None
    if "amplitudes" in d:
        state = DenseState(int(d["n"]), np.array([complex(re, im) for re, im in d["amplitudes"]]))
    else:
        other, _ = loads(json.dumps(d))
        state = dense_state(other)
    if state.n != net.n_visible:
        raise UsageError(f"oracle has {state.n} qubits, network has {net.n_visible}")
    return models.ModelBundle(Path(path).stem, net, lambda: state, None, {})


# -- subcommands ---------------------------------------------------------------------


def cmd_build(args) -> int:
    t0 = time.perf_counter()
    sources = [s for s in ("model", "hypergraph", "circuit", "stabilizers") if getattr(args, s)]
    if len(sources) != 1:
        raise UsageError("give exactly one of --model, --hypergraph, --circuit, --stabilizers")
    source = sources[0]
    sizes = {k: getattr(args, k) for k in SIZE_FLAGS if getattr(args, k) is not None}
    if source == "model":
        if args.model not in models.MODELS:
            raise UsageError(f"unknown model {args.model!r}; known: {', '.join(sorted(models.MODELS))}")
        spec = models.MODELS[args.model]
        extra = sorted(set(sizes) - set(spec.params))
        if extra:
            raise UsageError(f"model {args.model} does not take --{', --'.join(extra)}")
        params = {**spec.smallest, **sizes}
        try:
            bundle = models.build_model(args.model, **params)
        except (ValueError, TypeError) as exc:
            raise UsageError(f"invalid size for {args.model}: {exc}") from None
        net = bundle.rbm
        meta = {"source": "model", "model": args.model, "params": params,
                **{k: bundle.metadata[k] for k in ("n_terms", "bound")}}
    elif source == "hypergraph":
        hg = models.parse_hypergraph(_read(args.hypergraph))
        bundle = models.hypergraph_state(hg)
        net = bundle.rbm
        meta = {"source": "hypergraph", "n": hg.n, "hyperedges": [list(e) for e in hg.hyperedges],
                **{k: bundle.metadata[k] for k in ("n_terms", "bound")}}
    elif source == "circuit":
        circ = parse_circuit(_read(args.circuit))
        net = circuit_to_rbm(circ)
        meta = {"source": "circuit", "circuit": format_circuit(circ)}
    else:
        gens = parse_stabilizers(_read(args.stabilizers))
        try:
            net = stabilizer_state_to_rbm(gens)
        except ValueError as exc:
            raise SynthesisError(str(exc)) from None
        meta = {"source": "stabilizers", "stabilizers": gens.to_strings()}
    _write(dumps(net, meta), args.output)
    print(f"visible {net.n_visible}  hidden {net.n_hidden}  weights {net.n_weights}  "
          f"build {time.perf_counter() - t0:.3f}s", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    net, meta = _load_net(args.rbm_file)
    if args.oracle == "auto":
        bundle = bundle_from_meta(net, meta, args.seed)
    else:
        bundle = bundle_from_file(net, args.oracle)
    if bundle.rbm.n_visible != net.n_visible:
        raise UsageError("oracle and network disagree on the qubit count")
    report = check_bundle(bundle, tol=args.tol, tol_amp=args.tol_amp, samples=args.samples, seed=args.seed)
    print(report.to_json() if args.json else report.table())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_amp(args) -> int:
    net, _ = _load_net(args.rbm_file)
    try:
        bits = parse_bits(args.basis)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if len(bits) != net.n_visible:
        raise UsageError(f"basis string has {len(bits)} bits, network has {net.n_visible}")
    a = amplitude(net, bits)
    print(f"{a.real:.12g}{a.imag:+.12g}j")
    return EXIT_OK


def cmd_stats(args) -> int:
    net, meta = _load_net(args.rbm_file)
    stats = network_stats(net)
    if "n_terms" in meta:
        b = models.ModelBundle(meta.get("model", "network"), net, metadata={"n_terms": meta["n_terms"]})
        stats = resource_report(b)
    if args.json:
        print(json.dumps(stats, indent=1, sort_keys=True))
    else:
        width = max(len(k) for k in stats)
        for k, v in stats.items():
            print(f"{k:<{width}}  {v}")
    return EXIT_OK


def cmd_export(args) -> int:
    net, meta = _load_net(args.rbm_file)
    if args.format == "json":
        text = dumps(net, meta)
    elif args.format == "dense":
        st = dense_state(net)
        text = json.dumps({"n": st.n, "amplitudes": [[a.real, a.imag] for a in st.amplitudes]}) + "\n"
    else:
        lines = [f"visible {net.n_visible}", f"log_scale {net.log_scale!r}"]
        lines += [f"a {i} {a!r}" for i, a in enumerate(net.visible_biases) if a != 0]
        for j, h in enumerate(net.hidden):
            lines.append(f"h {j} bias {h.bias!r} " + " ".join(f"{k}:{x!r}" for k, x in h.weights))
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    return EXIT_OK


def parse_support(text: str) -> tuple[list[tuple[int, ...]], list[int]]:
    """Lines of ``bitstring sign`` with sign one of +1, -1, +, -."""
    configs, signs = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != 2 or toks[1] not in ("+1", "-1", "1", "+", "-"):
            raise ParseError("expected '<bitstring> <+1|-1>'", lineno)
        try:
            configs.append(parse_bits(toks[0]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        signs.append(-1 if toks[1].startswith("-") else 1)
    if not configs:
        raise ParseError("empty support file")
    return configs, signs


def cmd_fit(args) -> int:
    configs, signs = parse_support(_read(args.support))
    n = args.n if args.n is not None else len(configs[0])
    if any(len(c) != n for c in configs):
        raise UsageError(f"every bitstring must have {n} bits")
    phase = fit_cubic_phase(configs, signs, n)
    _write(format_closed_form(ClosedFormState(n, phase, ())), args.output)
    return EXIT_OK


def cmd_list(args) -> int:
    for name, spec in models.MODELS.items():
        flags = " ".join(f"--{p} {spec.smallest[p]}" for p in spec.params)
        print(f"{name:<14} {flags:<20} {spec.summary}")
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rbmtopo", description="Compile quantum states to exact RBM networks.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="compile a model or input file to network JSON")
    b.add_argument("--model")
    b.add_argument("--hypergraph", metavar="FILE")
    b.add_argument("--circuit", metavar="FILE")
    b.add_argument("--stabilizers", metavar="FILE")
    for flag in SIZE_FLAGS:
        b.add_argument(f"--{flag}", type=int)
    b.add_argument("-o", "--output", metavar="OUT")
    b.set_defaults(func=cmd_build)

    v = sub.add_parser("verify", help="check a network against its oracle")
    v.add_argument("rbm_file")
    v.add_argument("--oracle", default="auto", help="'auto' or a dense/network JSON file")
    v.add_argument("--tol", type=float, default=1e-9)
    v.add_argument("--tol-amp", type=float, default=1e-9)
    v.add_argument("--samples", type=int, default=10_000, help="spot checks beyond the dense cap")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("amp", help="print one amplitude")
    a.add_argument("rbm_file")
    a.add_argument("--basis", required=True, metavar="BITSTRING")
    a.set_defaults(func=cmd_amp)

    s = sub.add_parser("stats", help="neuron and weight counts")
    s.add_argument("rbm_file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_stats)

    e = sub.add_parser("export", help="re-emit a network as json, dense amplitudes or text")
    e.add_argument("rbm_file")
    e.add_argument("--format", choices=("json", "dense", "text"), default="json")
    e.add_argument("-o", "--output", metavar="OUT")
    e.set_defaults(func=cmd_export)

    f = sub.add_parser("fit", help="fit a cubic sign polynomial to signed support")
    f.add_argument("--support", required=True, metavar="FILE")
    f.add_argument("--n", type=int)
    f.add_argument("-o", "--output", metavar="OUT")
    f.set_defaults(func=cmd_fit)

    ls = sub.add_parser("list-models", help="show the model registry")
    ls.set_defaults(func=cmd_list)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ParseError, ResourceError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SynthesisError, FitError, StructureError) as exc:
        print(f"synthesis error: {exc}", file=sys.stderr)
        return EXIT_SYNTH


if __name__ == "__main__":
    sys.exit(main())
