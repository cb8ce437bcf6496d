from typing import Iterable

import pandas as pd

from subspace.io.export import export_json
from subspace.lab import ProblemReport, Regime, analyze
from subspace.linalg import HermitianMatrix
from subspace.utils.colors import colors
from subspace.utils.messages import msg_info, msg_ok, msg_warning


class SubSpace:
    """
    A perturbation problem: the unperturbed operator ``A``, the
    perturbation ``V`` and the indices of the eigenvalues of A forming
    sigma. Results are computed on first use
    """

    a: HermitianMatrix = None
    v: HermitianMatrix = None
    solver: str = None

    def __init__(
        self, a: HermitianMatrix, v: HermitianMatrix, sigma: Iterable[int], solver: str = None
    ) -> None:
        self.a = a
        self.v = v
        self.sigma = tuple(sigma)
        self.solver = solver
        self._report = None

    def __repr__(self) -> str:
        return (
            "<SubSpace object | dim " + str(self.a.dim) + ", " + str(len(self.sigma)) + " levels in sigma>"
        )

    # **************************
    #           results
    # **************************

    def report_(self) -> ProblemReport:
        """
        Returns the full analysis of the problem

        :return: regime, angle, bounds and enclosure checks
        :rtype: ``ProblemReport``

        :example: ``ss.report_()``
        """
        if self._report is None:
            self._report = analyze(self.a, self.v, self.sigma, self.solver)
        return self._report

    def d_(self) -> float:
        """
        Returns the distance between sigma and the rest of the spectrum

        :rtype: ``float``

        :example: ``ss.d_()``
        """
        return self.report_().d

    def norm_(self) -> float:
        """
        Returns the operator norm of ``V``

        :rtype: ``float``
        """
        return self.report_().norm_v

    def angle_(self) -> float:
        """
        Returns the maximal angle between the unperturbed and the
        perturbed spectral subspaces

        :rtype: ``float``

        :example: ``ss.angle_()``
        """
        return self.report_().theta

    def regime_(self) -> Regime:
        """
        Returns the detected regime

        :rtype: ``Regime``
        """
        return self.report_().regime

    def bounds_(self) -> pd.DataFrame:
        """
        Returns a dataframe with the applicable bounds and their margins
        over the angle

        :return: a pandas dataframe
        :rtype: ``DataFrame``

        :example: ``ss.bounds_()``
        """
        r = self.report_()
        return pd.DataFrame(
            {
                "kind": [c.kind.value for c in r.checks],
                "value": [c.value for c in r.checks],
                "margin": [c.margin for c in r.checks],
                "asserted": [c.asserted for c in r.checks],
            }
        )

    # **************************
    #           info
    # **************************

    def show(self) -> pd.DataFrame:
        """
        Display a summary of the problem

        :return: the bounds dataframe
        :rtype: ``DataFrame``

        :example: ``ss.show()``
        """
        r = self.report_()
        msg_info(
            "Regime",
            colors.bold(r.regime.name),
            "with d =",
            colors.bold(round(r.d, 9)),
            "and ||V||/d =",
            colors.bold(round(r.x, 9)),
        )
        msg_info("Angle", colors.bold(r.theta), "tightest bound", colors.bold(r.tightest.kind.value))
        if r.enclosure_ok and r.gap_ok is not False:
            msg_ok("Spectrum enclosures hold")
        else:
            msg_warning("Spectrum enclosures fail")
        return self.bounds_()

    # **************************
    #           transform
    # **************************

    def perturb(self, v: HermitianMatrix) -> None:
        """
        Replace the perturbation

        :param v: the new perturbation
        :type v: ``HermitianMatrix``

        :example: ``ss.perturb(v.scaled(0.5))``
        """
        self.a.check_dim(v)
        self.v = v
        self._report = None

    # **************************
    #           export
    # **************************

    def export_json(self, filepath: str = None) -> None:
        """
        Write the report as JSON

        :param filepath: path of the file, **default**: stdout
        :type filepath: ``str`` *optional*

        :example: ``ss.export_json("./report.json")``
        """
        export_json(self.report_().to_dict(), filepath)
