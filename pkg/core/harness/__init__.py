"""Identity registry, runner and report emission."""
