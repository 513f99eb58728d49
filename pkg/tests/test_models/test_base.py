"""Tests for base model classes."""

import logging

import pytest
from pydantic import Field, ValidationError

from hyperrxn.models.base import BaseModel, MutableModel

logging.basicConfig(
    level=logging.INFO, format="%(asctime)s - %(name)s - %(levelname)s - %(message)s"
)
logger = logging.getLogger(__name__)


class Point(BaseModel):
    x: int
    y: int = 0


class Settings(MutableModel):
    size: int = Field(1, ge=1)


class TestBaseModel:
    """Test cases for BaseModel class.

    BaseModel is the foundation of molecules, reactions, hypergraphs and
    reports. Records are immutable and reject unknown fields.
    """

    def test_creation(self):
        """Test BaseModel subclasses validate and store fields.

        Expected behavior:
            - Declared fields are stored
            - Defaults apply to omitted fields
        """
        logger.info("Testing BaseModel creation")
        point = Point(x=3)
        assert (point.x, point.y) == (3, 0)

    def test_extra_fields_forbidden(self):
        """Test BaseModel rejects fields it does not declare.

        A misspelled key in a JSON input must fail instead of being dropped.

        Expected behavior:
            - Unknown fields raise ValidationError
        """
        logger.info("Testing BaseModel rejects unknown fields")
        with pytest.raises(ValidationError):
            Point(x=1, z=2)

    def test_frozen(self):
        """Test BaseModel instances cannot be modified.

        Expected behavior:
            - Attribute assignment raises ValidationError
            - Equal field values compare equal and hash equally
        """
        logger.info("Testing BaseModel immutability")
        point = Point(x=1)
        with pytest.raises(ValidationError):
            point.x = 2
        assert Point(x=1) == point
        assert hash(Point(x=1)) == hash(point)


class TestMutableModel:
    """Test cases for MutableModel class.

    MutableModel backs configurations and run manifests, which are filled
    in step by step and validated on every assignment.
    """

    def test_validate_assignment(self):
        """Test assignments are validated.

        Expected behavior:
            - Valid assignments are stored
            - Invalid assignments raise ValidationError and keep the old value
        """
        logger.info("Testing MutableModel assignment validation")
        settings = Settings()
        settings.size = 4
        assert settings.size == 4
        with pytest.raises(ValidationError):
            settings.size = 0
        assert settings.size == 4

    def test_extra_fields_forbidden(self):
        """Test MutableModel rejects unknown fields like BaseModel.

        Expected behavior:
            - Unknown fields raise ValidationError
        """
        with pytest.raises(ValidationError):
            Settings(sise=2)
