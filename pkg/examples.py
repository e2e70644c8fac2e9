"""
Walkthrough of the laplimits operations.
Run this script to see radii, Shearer sequences, limits and certificates for the standard examples.
"""

import laplimits
from laplimits.models import Selection

MU_STAR = "(5+sqrt(33))/2"


def radii():
    """Radius of a small linear tree, by bisection and by the exact oracle"""
    print("\nRadius of [[1,1],[1,1,1,1]]...")
    g = laplimits.parse_linear_tree("[[1,1],[1,1,1,1]]")
    print(f"bisection: {laplimits.radius(g).value}")
    print(f"oracle:    {laplimits.oracle_radius(g).value}")

    trace = laplimits.pi_trace(g, 6)
    print(f"S at mu=6: {trace.s_values} -> radius {trace.location.value} 6")


def shearer():
    """Classic and generalized sequences at mu = 5.4"""
    print("\nClassic Laplacian sequence at 5.4...")
    run = laplimits.classic_laplacian(5.4, 12)
    print(f"counts: {run.counts}")
    print(f"last radius: {run.radii[-1]}")  # stalls below 5.4

    print("\nGeneralized sequence, uniform selection...")
    policy = laplimits.GeneratorPolicy(selection=Selection.UNIFORM_RANDOM, rng_seed=7)
    run = laplimits.generalized_random(5.4, 60, policy)
    print(f"last radius: {run.radii[-1]}")


def limits():
    """Exact limits and the certificate for the nasty caterpillar"""
    print("\nLimit of [[1,1]] followed by a path...")
    limit = laplimits.algebraic_limit(laplimits.parse_sequence_spec("[[1,1]]"))
    print(f"{limit.defining_polynomial.as_expr()} = 0 -> {limit.selected_root}")

    print("\nNasty caterpillar...")
    spec = laplimits.parse_sequence_spec("nasty-caterpillar")
    limit = laplimits.constant_tail_limit(
        spec.prefix, spec.tail.stars[0], spec.closing.stars[0], k_max=80
    )
    print(f"{limit.defining_polynomial.as_expr()} = 0 -> {limit.selected_root}")

    certificate = laplimits.alpha_certificate(spec, MU_STAR, 100)
    print(f"alpha_100 = {certificate.alpha_at(100)} at {certificate.precision} bits")
    print(f"verdict: {certificate.verdict.kind.value}")


def main():
    """Main function to run all examples"""
    print("Starting laplimits examples...")

    radii()
    shearer()
    limits()

    print("\nAll examples completed!")


if __name__ == "__main__":
    main()
