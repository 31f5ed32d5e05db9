"""Tests for detector specs and their JSON forms."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError as PydanticValidationError

from covertctl.exceptions import NotPositiveDefiniteError, ValidationError

from covertctl.core.ar1 import reset_covariance, stationary_covariance
from covertctl.core.detectors import (
    Decision,
    GaussianLRT,
    InnovationEnergy,
    Magnitude,
    ResetChiSquare,
    ResetQuadratic,
    covariance_from_document,
    parse_detector,
    required_horizon,
)


class TestParseDetector:
    def test_magnitude(self):
        spec = parse_detector({"kind": "magnitude", "m": 2.0, "n0": 11})
        assert spec == Magnitude(m=2.0, n0=11)
        assert required_horizon(spec) == 11

    @pytest.mark.parametrize(
        ("spec", "horizon"),
        [
            (InnovationEnergy(k=38, t=0.15), 39),
            (ResetChiSquare(t=2.0, tau=3), 4),
            (ResetQuadratic(t_prime=0.0, tau=5), 6),
        ],
    )
    def test_required_horizon(self, spec, horizon):
        assert required_horizon(spec) == horizon

    def test_unknown_kind(self):
        with pytest.raises(PydanticValidationError):
            parse_detector({"kind": "cusum"})

    def test_negative_threshold_rejected(self):
        with pytest.raises(PydanticValidationError):
            parse_detector({"kind": "reset_chi_square", "t": -1.0, "tau": 2})


class TestCovarianceDocuments:
    def test_dense_rows(self):
        cov = covariance_from_document([[2.0, 0.5], [0.5, 1.0]], "cov0")
        assert cov.dim == 2
        assert cov.label == "cov0"

    def test_stationary_model(self):
        cov = covariance_from_document(
            {"model": "stationary", "a": 0.5, "sigma_z": 1.0, "n": 3}, "cov0"
        )
        np.testing.assert_array_equal(cov.entries, stationary_covariance(0.5, 1.0, 3).entries)

    def test_reset_model(self):
        cov = covariance_from_document(
            {"model": "reset", "a": 0.5, "sigma_z": 1.0, "n": 4, "tau": 2}, "cov1"
        )
        np.testing.assert_array_equal(cov.entries, reset_covariance(0.5, 1.0, 4, 2).entries)

    def test_state_model(self):
        document = {
            "model": "state",
            "system": {"gain_a": 0.0, "noise": {"kind": "gaussian", "sigma_z": 1.0}},
            "n": 3,
        }
        np.testing.assert_array_equal(covariance_from_document(document, "cov0").entries, np.eye(3))

    def test_missing_field(self):
        with pytest.raises(ValidationError, match="missing field"):
            covariance_from_document({"model": "reset", "a": 0.5, "sigma_z": 1.0, "n": 4}, "cov1")

    @pytest.mark.parametrize("value", [{"model": "circulant"}, "eye", {"a": 0.5}])
    def test_unknown_forms(self, value):
        with pytest.raises(ValidationError):
            covariance_from_document(value, "cov0")


class TestGaussianLRTSpec:
    def test_parses_models_and_serializes_dense_rows(self):
        spec = parse_detector(
            {
                "kind": "gaussian_lrt",
                "cov0": {"model": "stationary", "a": 0.5, "sigma_z": 1.0, "n": 3},
                "cov1": {"model": "stationary", "a": 0.6, "sigma_z": 1.0, "n": 3},
            }
        )
        assert isinstance(spec, GaussianLRT)
        dumped = spec.model_dump(mode="json")
        assert dumped["cov0"] == stationary_covariance(0.5, 1.0, 3).to_rows()
        assert parse_detector(dumped).cov1.to_rows() == dumped["cov1"]

    def test_dimension_mismatch(self):
        with pytest.raises(ValidationError, match="differ in dimension"):
            GaussianLRT(
                cov0=stationary_covariance(0.5, 1.0, 3), cov1=stationary_covariance(0.5, 1.0, 4)
            )

    def test_non_positive_definite_rejected_at_construction(self):
        with pytest.raises(NotPositiveDefiniteError):
            GaussianLRT(cov0=[[1.0, 2.0], [2.0, 1.0]], cov1=[[1.0, 0.0], [0.0, 1.0]])

    def test_reset_logdet_ratio(self):
        spec = GaussianLRT.for_reset(0.9, 1.0, 6, 2)
        assert spec.logdet_ratio == pytest.approx(np.log(0.19), abs=1e-9)


def test_decision_serializes_all_fields():
    decision = Decision(reject_null=True, statistic=1.5, threshold=1.0)
    assert decision.model_dump(mode="json") == {
        "reject_null": True,
        "statistic": 1.5,
        "threshold": 1.0,
    }
