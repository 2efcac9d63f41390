"""Command-line interface.

Exit codes: 0 success, 1 inconclusive computation or failed verification,
2 usage or spec errors.  Reports are key=value lines followed by a
diagnostics block; CSV output is deterministic for a fixed seed.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click
import numpy as np

from .analytic import (
    CustomFunction,
    KoebeSquare,
    PowerMap,
    bgp_membership,
    check_univalence_sampled,
    lp_bergman_membership,
    lp_hardy_membership,
    make_extremal_map,
    univalence_margin,
)
from .analytic import UnivalenceError
from .estimator import (
    EstimatorOptions,
    ProfileDataError,
    ProfileRangeError,
    bergman_nonmembership_via_psi,
    estimate_bergman_numbers,
    estimate_hardy_number,
    hardy_membership_via_psi,
)
from .geometry import (
    SpecError,
    complement_scale,
    distance_to_complement,
    is_polar_complement,
    load_spec,
)
from .green import WoSConfig, green_evaluator
from .lattice import UndecidableInclusionError, extremal_pD, space_inclusion
from .psi import build_profile
from .spaces import Bergman, Hardy, Status, non_member
from .wos import EstimationError
from . import acceptance


class UsageFailure(click.ClickException):
    exit_code = 2


def _load(path: str):
    try:
        return load_spec(path)
    except SpecError as exc:
        raise UsageFailure(str(exc))


def _parse_space(text: str):
    parts = text.split(":")
    try:
        if parts[0] in ("H", "h") and len(parts) == 2:
            return Hardy(float(parts[1]))
        if parts[0] in ("A", "a") and len(parts) == 3:
            return Bergman(float(parts[1]), float(parts[2]))
    except ValueError as exc:
        raise UsageFailure(f"bad space {text!r}: {exc}")
    raise UsageFailure(f"bad space {text!r}; use H:p or A:p:alpha")


def _parse_exponents(text: str):
    # p or p:alpha
    parts = text.split(":")
    try:
        if len(parts) == 1:
            return Hardy(float(parts[0]))
        if len(parts) == 2:
            return Bergman(float(parts[0]), float(parts[1]))
    except ValueError as exc:
        raise UsageFailure(f"bad exponents {text!r}: {exc}")
    raise UsageFailure(f"bad exponents {text!r}; use p or p:alpha")


def _parse_function(text: str):
    parts = text.split(":")
    try:
        if parts[0] == "powermap" and len(parts) == 2:
            return PowerMap(float(parts[1]))
        if parts[0] == "koebe" and len(parts) == 1:
            return KoebeSquare()
        if parts[0] == "fab" and len(parts) == 3:
            return make_extremal_map(float(parts[1]), float(parts[2]))
        if parts[0] == "identity" and len(parts) == 1:
            return CustomFunction(f=lambda z: z, fprime=np.ones_like)
    except ValueError as exc:
        raise UsageFailure(f"bad function {text!r}: {exc}")
    return None


def _run_estimation(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ProfileRangeError as exc:
        raise UsageFailure(f"{exc}; widen --r-max")
    except (ProfileDataError, EstimationError) as exc:
        raise click.ClickException(str(exc))


def _default_grid(spec):
    near = distance_to_complement(spec, spec.base_point)
    r_min = 0.05 * near
    r_max = 2000.0 * complement_scale(spec)
    return r_min, r_max


def _profile_from_options(spec, engine, r_min, r_max, ppd, walks, seed, eps):
    d_min, d_max = _default_grid(spec)
    r_min = d_min if r_min is None else r_min
    r_max = d_max if r_max is None else r_max
    cfg = WoSConfig(walks=walks, seed=seed, epsilon_shell=eps)
    try:
        ev = green_evaluator(spec, engine, cfg)
        return build_profile(ev, r_min, r_max, ppd)
    except SpecError as exc:
        raise UsageFailure(str(exc))


_GRID_OPTIONS = [
    click.option("--engine", type=click.Choice(["auto", "closed-form", "wos"]),
                 default="auto", show_default=True),
    click.option("--r-min", type=float, default=None,
                 help="smallest circle radius [default: 0.05 x base clearance]"),
    click.option("--r-max", type=float, default=None,
                 help="largest circle radius [default: 2000 x complement scale]"),
    click.option("--points-per-decade", "ppd", type=int, default=8, show_default=True),
    click.option("--walks", type=int, default=20_000, show_default=True,
                 help="walk-on-spheres samples per evaluation point"),
    click.option("--seed", type=int, default=0, show_default=True),
    click.option("--epsilon-shell", "eps", type=float, default=None,
                 help="boundary capture distance [default: 1e-6 x complement scale]"),
]


def _with_grid_options(fn):
    for opt in reversed(_GRID_OPTIONS):
        fn = opt(fn)
    return fn


@click.group()
def main():
    """Hardy and Bergman numbers of planar domains via Green functions."""


@main.command("psi")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=False))
@click.option("--out", type=click.Path(), default=None, help="CSV output path [default: stdout]")
@_with_grid_options
def psi_cmd(spec_path, out, engine, r_min, r_max, ppd, walks, seed, eps):
    """Sample the circular means of the Green function on a log grid (CSV r,psi,err)."""
    spec = _load(spec_path)
    profile = _profile_from_options(spec, engine, r_min, r_max, ppd, walks, seed, eps)
    if out:
        profile.to_csv(out)
        click.echo(f"wrote {len(profile.radii)} rows to {out}")
    else:
        profile.write_csv(sys.stdout)


@main.command("hardy")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=False))
@click.option("--infinity-cap", type=float, default=50.0, show_default=True)
@click.option("--slope-tol", type=float, default=0.05, show_default=True)
@_with_grid_options
def hardy_cmd(spec_path, infinity_cap, slope_tol, engine, r_min, r_max, ppd,
              walks, seed, eps):
    """Estimate the Hardy number from the tail slope of the psi profile."""
    spec = _load(spec_path)
    opts = EstimatorOptions(infinity_cap=infinity_cap, slope_tol=slope_tol)
    if is_polar_complement(spec):
        est = estimate_hardy_number(spec, None, opts)
    else:
        profile = _profile_from_options(spec, engine, r_min, r_max, ppd, walks, seed, eps)
        est = _run_estimation(estimate_hardy_number, spec, profile, opts)
    click.echo(f"h={est.value!r}")
    click.echo(f"confidence={est.confidence!r}")
    click.echo(f"method={est.method.value}")
    click.echo("# tail windows (start radius, slope):")
    for r, s in est.window_slopes:
        click.echo(f"#   r={r:.6g} slope={s:.6f}")
    for key, val in est.diagnostics.items():
        click.echo(f"# {key}: {val}")


@main.command("bergman")
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=False))
@click.option("--alpha", "alphas", type=float, multiple=True, default=(0.0,),
              show_default=True)
@_with_grid_options
def bergman_cmd(spec_path, alphas, engine, r_min, r_max, ppd, walks, seed, eps):
    """Report b and b_alpha (equal to h and (alpha+2) h respectively)."""
    spec = _load(spec_path)
    if is_polar_complement(spec):
        est = estimate_hardy_number(spec, None)
    else:
        profile = _profile_from_options(spec, engine, r_min, r_max, ppd, walks, seed, eps)
        est = _run_estimation(estimate_hardy_number, spec, profile)
    numbers = estimate_bergman_numbers(est, alphas)
    click.echo(f"h={est.value!r}")
    click.echo(f"b={numbers.b!r}")
    for a, v in numbers.b_alpha.items():
        click.echo(f"b_alpha[{a:g}]={v!r}")
    click.echo(f"# method={est.method.value}, confidence={est.confidence!r}")


@main.command("member")
@click.option("--space", "space_text", required=True,
              help="H:p for Hardy, A:p:alpha for weighted Bergman")
@click.option("--target", required=True,
              help="domain spec path, or powermap:a | koebe | fab:a:b | identity")
@_with_grid_options
def member_cmd(space_text, target, engine, r_min, r_max, ppd, walks, seed, eps):
    """Test membership of a domain's covering map or an explicit function."""
    space = _parse_space(space_text)
    fn = _parse_function(target)
    if fn is not None:
        if isinstance(space, Hardy):
            verdict, rule = lp_hardy_membership(fn, space.p), "littlewood-paley"
        elif isinstance(fn, CustomFunction):
            verdict, rule = lp_bergman_membership(fn, space.p, space.alpha), "littlewood-paley"
        else:
            try:
                verdict, rule = bgp_membership(fn, space.p, space.alpha), "sup-norm-integral"
            except UnivalenceError:
                verdict, rule = lp_bergman_membership(fn, space.p, space.alpha), "littlewood-paley"
    else:
        if not Path(target).exists():
            raise UsageFailure(f"target {target!r} is neither a readable spec file "
                               "nor a recognized function tag")
        spec = _load(target)
        if is_polar_complement(spec):
            verdict, rule = non_member(-space.p, reason="polar complement, all numbers vanish"), "polar-shortcut"
        else:
            profile = _profile_from_options(spec, engine, r_min, r_max, ppd,
                                            walks, seed, eps)
            if isinstance(space, Hardy):
                verdict = _run_estimation(hardy_membership_via_psi, profile, space.p)
            else:
                verdict = _run_estimation(bergman_nonmembership_via_psi,
                                          profile, space.p, space.alpha)
            rule = "psi-integral"
    click.echo(f"space={space}")
    click.echo(f"status={verdict.status.value}")
    click.echo(f"margin={verdict.margin!r}")
    click.echo(f"rule={rule}")
    for key, val in verdict.diagnostics.items():
        click.echo(f"# {key}: {val}")
    if verdict.status is Status.INCONCLUSIVE:
        sys.exit(1)


@main.command("include")
@click.option("--from", "src_text", required=True, help="p or p:alpha")
@click.option("--to", "dst_text", required=True, help="q or q:beta")
def include_cmd(src_text, dst_text):
    """Decide inclusion between Hardy/Bergman spaces (exact rules)."""
    src = _parse_exponents(src_text)
    dst = _parse_exponents(dst_text)
    try:
        verdict = space_inclusion(src, dst)
    except UndecidableInclusionError as exc:
        raise UsageFailure(str(exc))
    click.echo(f"from={src}")
    click.echo(f"to={dst}")
    click.echo(f"included={str(verdict.included).lower()}")
    click.echo(f"rule={verdict.rule.value}")
    if verdict.rule.value == "duren-embedding" and not verdict.included:
        click.echo("# not guaranteed by the sufficient embedding; no disproof implied")


@main.command("extremal")
@click.option("--a", "a", type=float, required=True)
@click.option("--b", "b", type=float, required=True)
@click.option("--samples", type=int, default=10_000, show_default=True)
def extremal_cmd(a, b, samples):
    """Construct the extremal map, report C, h, p_D and the univalence check."""
    try:
        fab = make_extremal_map(a, b)
        exps = extremal_pD(a, b)
    except ValueError as exc:
        raise UsageFailure(str(exc))
    univ = check_univalence_sampled(fab, samples)
    click.echo(f"C={fab.C!r}")
    click.echo(f"h={exps.h!r}")
    click.echo(f"p_D={exps.p_d!r}")
    click.echo(f"univalence_margin={univalence_margin(fab)!r}")
    click.echo(f"univalence_sampled={'pass' if univ else 'fail'}")
    click.echo(f"# margin target pi/4 = {math.pi/4!r}")


@main.command("verify")
@click.option("--only", default=None,
              help="comma-separated criterion ids, e.g. --only 1,4,10")
def verify_cmd(only):
    """Run the acceptance suite and print one pass/fail line per criterion."""
    ids = None
    if only:
        try:
            ids = {int(tok) for tok in only.split(",")}
        except ValueError:
            raise UsageFailure(f"bad --only value {only!r}")
    results = acceptance.run_all(only=ids, report=click.echo)
    failed = [r for r in results if not r.passed]
    click.echo(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    if failed:
        sys.exit(1)


if __name__ == "__main__":
    main()
