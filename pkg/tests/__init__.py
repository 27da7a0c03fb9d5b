# Tests for the polignac toolkit
