"""
Classes to validate efda JSON documents: distribution-law descriptors, CLI settings and the
alignment result artifact.

https://python-jsonschema.readthedocs.io/en/latest/

Code Example:
from efda import efdavalidator
efdavalidator.EfdaValidator.validate_law({'law': 'exponential', 'mean': 1.0})
"""
import json
import os

import jsonschema

from efda import efdaconstants
from efda import efdasrvf


class ArtifactValidationError(efdasrvf.EfdaError):
    """ Error raised when a document does not match its schema """
    pass


SCHEMA_DIRECTORY = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'schemas')
ALIGNMENT_RESULT_SCHEMA_FILE = os.path.join(SCHEMA_DIRECTORY, 'alignment_result.schema.json')


class EfdaValidator(object):
    """ Validates efda JSON documents against their schemas """

    _alignment_result_schema = None

    @staticmethod
    def _validate(instance, schema):
        try:
            jsonschema.validate(instance=instance, schema=schema)
        except jsonschema.ValidationError as err:
            path = '/'.join(str(part) for part in err.absolute_path)
            raise ArtifactValidationError(path or '(root)', '%s at' % err.message)

    @staticmethod
    def validate_law(descriptor):
        """ Validate a distribution-law descriptor """
        if not isinstance(descriptor, dict):
            raise TypeError("Expected a law descriptor dictionary, '%s' given" % str(type(descriptor)))
        EfdaValidator._validate(descriptor, EfdaValidator.VALIDATION_SCHEMA_LAW)

    @staticmethod
    def validate_cli_config(config):
        """ Validate CLI settings """
        EfdaValidator._validate(config, EfdaValidator.VALIDATION_SCHEMA_CLI_CONFIG)

    @staticmethod
    def get_alignment_result_schema():
        """ Schema of result.json, loaded once from the package data """
        if EfdaValidator._alignment_result_schema is None:
            with open(ALIGNMENT_RESULT_SCHEMA_FILE, encoding='utf-8') as schema_file:
                EfdaValidator._alignment_result_schema = json.load(schema_file)
        return EfdaValidator._alignment_result_schema

    @staticmethod
    def validate_alignment_result(payload):
        """ Validate an alignment result payload, including the shapes of its arrays """
        EfdaValidator._validate(payload, EfdaValidator.get_alignment_result_schema())
        n_points = len(payload['grid'])
        for key in ('template', 'template_srvf'):
            if key in payload and len(payload[key]) != n_points:
                raise ArtifactValidationError(key, 'Array length differs from the grid length at')
        if len(payload['warps']) != len(payload['aligned']):
            raise ArtifactValidationError('warps', 'Different numbers of warps and aligned functions at')
        for key in ('warps', 'aligned'):
            for index, row in enumerate(payload[key]):
                if len(row) != n_points:
                    raise ArtifactValidationError(
                        '%s/%d' % (key, index), 'Array length differs from the grid length at')

    # Validation schemas
    VALIDATION_SCHEMA_LAW = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "Distribution_Law",
        "description": "A distribution for the scale or translation of simulated observations",
        "oneOf": [
            {
                "type": "object",
                "properties": {
                    "law": {"const": efdaconstants.EfdaConstants.LAW_CONSTANT},
                    "value": {"type": "number"},
                },
                "required": ["law", "value"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "law": {"const": efdaconstants.EfdaConstants.LAW_NORMAL},
                    "mean": {"type": "number"},
                    "sd": {"type": "number", "minimum": 0},
                },
                "required": ["law", "mean", "sd"],
                "additionalProperties": False,
            },
            {
                "type": "object",
                "properties": {
                    "law": {"const": efdaconstants.EfdaConstants.LAW_EXPONENTIAL},
                    "mean": {"type": "number", "exclusiveMinimum": 0},
                },
                "required": ["law", "mean"],
                "additionalProperties": False,
            },
        ],
    }

    VALIDATION_SCHEMA_CLI_CONFIG = {
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "Cli_Config",
        "description": "Settings shared by the efda commands",
        "type": "object",
        "properties": {
            "grid_n": {"type": ["integer", "null"], "minimum": efdaconstants.EfdaConstants.MIN_DP_GRID_N},
            "dp_slope_max": {"type": "integer", "minimum": 1},
            "dp_refine": {"type": "integer", "minimum": 1},
            "max_iter": {"type": "integer", "minimum": 1},
            "tol": {"type": "number", "exclusiveMinimum": 0},
            "seed": {"type": ["integer", "null"]},
            "output_dir": {"type": "string", "minLength": 1},
            "verbosity": {"type": "integer", "minimum": 0},
        },
        "required": ["dp_slope_max", "max_iter", "tol", "output_dir"],
    }
