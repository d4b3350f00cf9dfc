"""Atlases, fourientation bijections and Lawrence polytopes of regular matroids."""
