from frobscope.reductive.groups import GroupTable, enumerate_group
from frobscope.reductive.volumes import (
    VolumeReport,
    coset_volume_report,
    isogeny_count_check,
    np_value,
    predicted_regular_class_size,
    volume_report,
)
from frobscope.reductive.weyl import (
    GroupSpec,
    TorusClassRecord,
    WeylElement,
    class_equation,
    torus_order,
    weyl_twisted_classes,
)

__all__ = [
    "GroupSpec",
    "GroupTable",
    "TorusClassRecord",
    "VolumeReport",
    "WeylElement",
    "class_equation",
    "coset_volume_report",
    "enumerate_group",
    "isogeny_count_check",
    "np_value",
    "predicted_regular_class_size",
    "torus_order",
    "volume_report",
    "weyl_twisted_classes",
]
