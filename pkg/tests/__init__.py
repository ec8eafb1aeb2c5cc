"""Test suite for the Synapse Council."""
