"""Analysis, classification and bounds for binary LCD codes."""
