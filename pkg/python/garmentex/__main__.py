# Copyright (c) 1998-2025 Scott Russell
# SPDX-License-Identifier: MIT

from garmentex.cli.main import main

main()
