#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import unittest

from temposgm.sgm import StagePipeline
from stage_utils import create_node


class TestEmptyPipeline(unittest.TestCase):
    def setUp(self):
        self.pipeline = StagePipeline()

    def test_parameters(self):
        self.assertDictEqual(self.pipeline.parameters(), {})

    def test_input_type(self):
        self.assertEqual(self.pipeline.input_type, "Any")

    def test_output_type(self):
        self.assertEqual(self.pipeline.output_type, "Any")

    def test_execute(self):
        data = object()
        self.assertEqual(self.pipeline.execute(data), data)
        self.assertDictEqual(self.pipeline.timings, {})


class TestPipelineWithNodes(unittest.TestCase):
    def setUp(self):
        self.nodes = [
            create_node(
                name="one",
                input_type="in",
                output_type="one_out",
                parameters={"param": 1},
                with_execute=True,
            ),
            create_node(
                name="two",
                input_type="one_out",
                output_type="two_out",
                parameters={"param": 2},
                with_execute=True,
            ),
            create_node(
                name="three",
                input_type="two_out",
                output_type="out",
                parameters={"param": 3},
                with_execute=True,
            ),
        ]
        self.pipeline = StagePipeline(*self.nodes)

    def test_nodes(self):
        self.assertEqual(self.pipeline.nodes, tuple(self.nodes))

    def test_parameters(self):
        check = self.pipeline.parameters()
        for node in self.nodes:
            self.assertIn(node.name, check)
            self.assertDictEqual(check[node.name], node.parameters())

    def test_input_type(self):
        self.assertEqual(self.nodes[0].input_type, self.pipeline.input_type)

    def test_output_type(self):
        self.assertEqual(self.nodes[-1].output_type, self.pipeline.output_type)

    def test_add_not_matching_node(self):
        node = create_node(name="not_matching", input_type="not_matching")
        self.assertRaises(ValueError, self.pipeline.add_node, node)

    def test_add_duplicate_node(self):
        node = create_node(name="one", input_type="out", output_type="out")
        self.assertRaises(ValueError, self.pipeline.add_node, node)

    def test_execute(self):
        self.assertEqual(self.pipeline.execute(0), 3)

    def test_execute_with_options(self):
        self.assertEqual(self.pipeline.execute(0, two={"add": 10}), 12)

    def test_timings(self):
        self.pipeline.execute(0)
        timings = self.pipeline.timings
        self.assertEqual(list(timings), ["one", "two", "three"])
        self.assertTrue(all(value >= 0 for value in timings.values()))
