"""Scratch file for checking the mechanics core by hand."""

import os
import sys

from loguru import logger

from trojan_lab.mechanics.const import DEBUG
from trojan_lab.mechanics.frame import lagrange_points, linearise
from trojan_lab.mechanics.kepler4 import TABLES, render_table, reproduce_tables
from trojan_lab.mechanics.models.enums import Orientation
from trojan_lab.mechanics.models.system import SystemParams
from trojan_lab.mechanics.wimp.geometry import quantum_curvature_torsion_3d

LOG_LEVEL = "INFO"
MU_RATIO = float(os.getenv("MU_RATIO", "9.5365e-4"))

logger.remove()
logger.add(sys.stdout, colorize=DEBUG, level=LOG_LEVEL)


def main() -> None:
    """Print the L4 linearisation, the fourth-law tables and one 3-D orbit point."""
    params = SystemParams.from_mass_ratio(MU_RATIO)
    lin = linearise(params, Orientation.L4)
    logger.info(f"Mass product {params.mass_product:.6g}, stable: {lin.stable}")
    logger.info(f"alpha = {lin.alpha:.10f}, beta = {lin.beta:.10f}")
    for name, point in lagrange_points(params).to_dict().items():
        logger.debug(f"{name}: {point}")

    tables = reproduce_tables(logger=logger)
    for title, _, unit in TABLES:
        logger.info(f"{title}\n{render_table(title, tables[title], unit)}")

    geometry = quantum_curvature_torsion_3d(1.0, (0.8, 0.3, 0.4))
    logger.info(f"kappa = {geometry.kappa:.10f}, tau = {geometry.tau:.6f}")


if __name__ == "__main__":
    main()
