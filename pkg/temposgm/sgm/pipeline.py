#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
"""
This module implements typed processing pipelines of matcher stages.

A stage node is an algorithm together with the type of data it consumes
and the type of data it produces. Nodes are chained into a pipeline which
checks that the output of every node matches the input of the next one,
passes the data along and measures how long every stage took.
"""
import abc
import logging
import time
from typing import Any, Dict

__all__ = ["StageNode", "StagePipeline"]

_logger = logging.getLogger(__name__)


class StageNode(metaclass=abc.ABCMeta):
    """
    The abstract base class of the nodes in a stage pipeline.
    """

    @property
    @abc.abstractmethod
    def name(self) -> str:
        """
        Returns the name of this node.

        Typically, this is the name of the algorithm implemented by this node.
        It is used to report the timings of the node.

        :return: The name of this node
        """
        raise NotImplementedError("Has to be implemented by subclasses")

    @abc.abstractmethod
    def parameters(self) -> Dict[str, Any]:
        """
        Returns the settings this node was configured with.

        :return: A dictionary mapping the parameter names to their values.
        """
        raise NotImplementedError("Has to be implemented by subclasses")

    @property
    @abc.abstractmethod
    def input_type(self) -> str:
        """
        The name of the data type this node consumes.

        :return: The data type of the input data
        """
        raise NotImplementedError("Has to be implemented by subclasses")

    @property
    @abc.abstractmethod
    def output_type(self) -> str:
        """
        The name of the data type this node produces.

        :return: The type of the output data
        """
        raise NotImplementedError("Has to be implemented by subclasses")

    @abc.abstractmethod
    def execute(self, input_data: Any, **kwargs: Any) -> Any:
        """
        Execute the algorithm of this node on the given `input_data`.

        The `kwargs` are per call options of this node, passed to
        :meth:`StagePipeline.execute` under the name of the node.

        :param input_data: The data to execute the algorithm on.
        :param kwargs: Per call options.
        :return: The result of the algorithm
        """
        raise NotImplementedError("Has to be implemented by subclasses")

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, StageNode):
            return other.name == self.name
        return False

    def __hash__(self) -> int:
        return hash(self.name)


class StagePipeline:
    """
    A chain of stage nodes.

    The input of each node must match the output of the previous node.
    Executing the pipeline passes the data from node to node and records
    the wall-clock duration of every node in :attr:`timings`.
    """

    def __init__(self, *nodes: StageNode):
        self.__nodes = []
        self.__timings = {}
        for node in nodes:
            self.add_node(node)

    def add_node(self, node: StageNode):
        """
        Append a node to this pipeline.

        :param node: The node to add to this pipeline.
        """
        if self.output_type not in ("Any", node.input_type):
            raise ValueError(
                f"Can't add node '{node.name}': "
                "The input types don't match. "
                f"Expected '{self.output_type}' but got '{node.input_type}'"
            )
        if node in self.__nodes:
            raise ValueError(f"The pipeline already contains a node '{node.name}'")
        self.__nodes.append(node)

    @property
    def nodes(self) -> tuple:
        return tuple(self.__nodes)

    def parameters(self) -> Dict[str, Dict[str, Any]]:
        """
        Returns the settings of all nodes, keyed by node name.
        """
        return {node.name: node.parameters() for node in self.__nodes}

    @property
    def input_type(self) -> str:
        """
        The data type of the first node, "Any" for an empty pipeline.
        """
        if not self.__nodes:
            return "Any"
        return self.__nodes[0].input_type

    @property
    def output_type(self) -> str:
        """
        The data type of the last node, "Any" for an empty pipeline.
        """
        if not self.__nodes:
            return "Any"
        return self.__nodes[-1].output_type

    @property
    def timings(self) -> Dict[str, float]:
        """
        The durations in seconds of the nodes during the last execution.
        """
        return dict(self.__timings)

    def execute(self, input_data: Any, **kwargs: Dict[str, Any]) -> Any:
        """
        Execute the pipeline on `input_data` and return the result of the last node.

        :param input_data: The input of the first node.
        :param kwargs: Per call options of the nodes, keyed by node name.
        :return: The result of the pipeline
        """
        self.__timings = {}
        data = input_data
        for node in self.__nodes:
            options = kwargs.get(node.name, {})
            start = time.perf_counter()
            data = node.execute(data, **options)
            elapsed = time.perf_counter() - start
            self.__timings[node.name] = elapsed
            _logger.debug("Stage '%s' took %.4fs", node.name, elapsed)
        return data
