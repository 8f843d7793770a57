from .cloud import PointCloud, select_high_gbv, tag_probability_cloud
from .mapper import Cover, MapperGraph, MapperNode, decorate, mapper
from .pca import PcaModel, pca_fit, pca_inverse, pca_transform

__all__ = [
    "PointCloud",
    "tag_probability_cloud",
    "select_high_gbv",
    "PcaModel",
    "pca_fit",
    "pca_transform",
    "pca_inverse",
    "Cover",
    "MapperNode",
    "MapperGraph",
    "mapper",
    "decorate",
]
