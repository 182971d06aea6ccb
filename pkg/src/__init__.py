"""
tedge-engine - Temporal Weighted Multidigraph Embedding

Models transaction records as a temporal weighted multidigraph, generates
time-respecting biased random walks, learns node embeddings with
hierarchical-softmax skip-gram and evaluates them on phishing-account
classification.
"""

__version__ = "0.1.0"
