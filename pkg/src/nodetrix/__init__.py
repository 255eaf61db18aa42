"""NodeTrix planarity testing for flat clustered graphs."""
