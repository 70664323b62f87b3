"""One handler per subcommand: (args, cfg) -> JSON-ready payload."""
import logging

from algebra.algebra import validate as validate_constants
from composition.composition import compose, compose_ode, compose_via_rep, inverse_point
from coords.coords import integrals_of_motion, one_param_ode, one_param_point, to_first, to_second
from frames.frames import GroupPoint, frame_first, frame_second
from homogeneous.homogeneous import action, adapted_basis, generators, lift_point, subalgebra
from numerics.config import SolverConfig
from numerics.errors import AlgebraValidationError, InvalidInputError
from . import catalog
from .loader import (load_algebra, load_constants, load_representation, parse_bindings, parse_point,
                     parse_subalgebra)

log = logging.getLogger(__name__)


def _algebra(args):
    bindings = parse_bindings(args.param)
    return load_algebra(args.algebra, bindings), bindings


def _point(args, attr, alg, bindings, name=None):
    return parse_point(getattr(args, attr), alg.dim, name or attr, bindings)


def _model(args, alg, bindings):
    h = subalgebra(alg, parse_subalgebra(args.subalgebra, alg.dim, bindings))
    return adapted_basis(alg, h)


def validate(args, cfg: SolverConfig) -> dict:
    constants, name, _ = load_constants(args.algebra, parse_bindings(args.param))
    report = validate_constants(constants)
    if not report.ok:
        raise AlgebraValidationError(report)
    return {"valid": True, "name": name, "dim": constants.dim, "total": 0, "violations": []}


def frame(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    coords = _point(args, "point", alg, bindings)
    if args.chart == "first":
        f = frame_first(alg, GroupPoint.first(coords))
    else:
        f = frame_second(alg, GroupPoint.second(coords))
    return {"chart": args.chart, "point": coords, "omega": f.omega, "xi": f.xi,
            "sigma": f.sigma, "eta": f.eta, "ad": f.ad_point}


def compose_points(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    x = GroupPoint.second(_point(args, "x", alg, bindings))
    y = GroupPoint.second(_point(args, "y", alg, bindings))
    if args.method == "ode":
        result = compose_ode(alg, x, y, cfg, side=args.side)
    elif args.method == "rep":
        if not args.rep:
            raise InvalidInputError("--method rep needs --rep FILE")
        result = compose_via_rep(load_representation(args.rep), alg, x, y, cfg)
    else:
        result = compose(alg, x, y, cfg)
    return {"x": x.coords, "y": y.coords, **result.as_dict()}


def inverse(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    x = GroupPoint.second(_point(args, "point", alg, bindings))
    kappa = inverse_point(alg, x, cfg)
    return {"point": x.coords, "inverse": kappa.coords}


def coords(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    p = _point(args, "point", alg, bindings)
    if args.to == "second":
        result = to_second(alg, GroupPoint.first(p), cfg)
    else:
        result = to_first(alg, GroupPoint.second(p), cfg)
    return {"from": p, "to": args.to, **result.as_dict()}


def subgroup(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    y = _point(args, "direction", alg, bindings)
    if args.method == "ode":
        point = one_param_ode(alg, y, args.t, cfg, side=args.side)
    else:
        point = one_param_point(alg, y, args.t, cfg)
    return {"direction": y, "t": args.t, "method": args.method, "point": point.coords,
            "integrals_of_motion": integrals_of_motion(alg, y, point)}


def generator_fields(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    model = _model(args, alg, bindings)
    q = parse_point(args.point, model.m, "coset point", bindings)
    X = generators(model, q, cfg)
    return {"m": model.m, "q": q, "basis": model.transform.T, "labels": list(model.adapted.labels),
            "generators": X.T}


def act(args, cfg: SolverConfig) -> dict:
    alg, bindings = _algebra(args)
    model = _model(args, alg, bindings)
    q = parse_point(args.q, model.m, "coset point", bindings)
    z = GroupPoint.second(parse_point(args.z, alg.dim, "z", bindings))
    if args.z_chart == "source":
        z = lift_point(model, z, cfg)
    result = action(model, q, z, cfg)
    return {"m": model.m, "q": q, "z_adapted": z.coords, **result.as_dict()}


def catalog_list(args, cfg: SolverConfig) -> dict:
    return {"entries": catalog.entries()}
