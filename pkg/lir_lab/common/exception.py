# Copyright 2026 The lir_lab Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
This module contains the exceptions raised by the lir_lab operations.
"""


class LirOperationError(Exception):
    """
    Base class of every error raised by an lir_lab operation.

    Args:
        operation (string): name of the operation that failed
        message (string): description of the failure

    Example:
        raise LirOperationError("build_metric", "resolution too small")
    """

    def __init__(self, operation, message):
        self.operation = operation
        self.message = message
        Exception.__init__(self, "%s: %s" % (operation, message))


class InvalidModel(LirOperationError):
    pass


class NotAdmissible(LirOperationError):
    def __init__(self, operation, message, node=None, value=None):
        LirOperationError.__init__(self, operation, message)
        self.node = node
        self.value = value


class InjectionRejected(LirOperationError):
    def __init__(self, operation, message, pair=None):
        LirOperationError.__init__(self, operation, message)
        self.pair = pair


class CoverIncomplete(LirOperationError):
    def __init__(self, operation, message, nodes=None):
        LirOperationError.__init__(self, operation, message)
        self.nodes = nodes if nodes is not None else []


class ChainExhausted(LirOperationError):
    pass


class InfiniteExponent(LirOperationError):
    pass


class RankMismatch(LirOperationError):
    pass


class NotElliptic(LirOperationError):
    def __init__(self, operation, message, x=None, xi=None):
        LirOperationError.__init__(self, operation, message)
        self.x = x
        self.xi = xi


class ThresholdAmbiguous(LirOperationError):
    def __init__(self, operation, message, singular_values=None):
        LirOperationError.__init__(self, operation, message)
        self.singular_values = singular_values


class NotOrthogonal(LirOperationError):
    def __init__(self, operation, message, max_inner=None):
        LirOperationError.__init__(self, operation, message)
        self.max_inner = max_inner


class NoConvergence(LirOperationError):
    def __init__(self, operation, message, history=None):
        LirOperationError.__init__(self, operation, message)
        self.history = list(history) if history is not None else []


class BallTooLarge(LirOperationError):
    def __init__(self, operation, message, measured=None):
        LirOperationError.__init__(self, operation, message)
        self.measured = measured


class GridMisaligned(LirOperationError):
    pass


class GramSingular(LirOperationError):
    def __init__(self, operation, message, condition=None):
        LirOperationError.__init__(self, operation, message)
        self.condition = condition


class ConfigInvalid(LirOperationError):
    """
    Raised for a configuration document that fails validation.

    Args:
        field (string): dotted path of the offending field, e.g. "epsilon"
        message (string): what is wrong with it
    """

    def __init__(self, field, message):
        LirOperationError.__init__(self, "load_config",
                                   "field '%s': %s" % (field, message))
        self.field = field
