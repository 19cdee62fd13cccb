"""Half-integral packings and linear-time FPT algorithms for 0/1/all deletion."""
