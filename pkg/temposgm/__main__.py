#!/usr/bin/env python
# -*- coding: UTF-8 -*-
#
import sys

from temposgm.cli import main

sys.exit(main())
