"""chronnets: chronological networks from spatiotemporal events."""
