from .dot import mapper_to_dot, mapper_to_json, write_mapper_files
from .svg import (
    CalendarHeatmap,
    anomaly_plot_svg,
    bar_chart_svg,
    build_heatmap,
    ccf_plot_svg,
    heatmap_svg,
    ramp_color,
    render_heatmap,
    series_plot_svg,
)
from .tables import (
    TagFrequencyReport,
    TagFrequencyRow,
    read_anomaly_csv,
    read_ccf_csv,
    read_decomposition_csv,
    read_tag_frequency_csv,
    tag_frequency,
    write_anomaly_csv,
    write_anomaly_table_csv,
    write_ccf_csv,
    write_decomposition_csv,
    write_tag_frequency_csv,
)

__all__ = [
    "TagFrequencyRow",
    "TagFrequencyReport",
    "tag_frequency",
    "write_tag_frequency_csv",
    "read_tag_frequency_csv",
    "write_anomaly_csv",
    "read_anomaly_csv",
    "write_anomaly_table_csv",
    "write_decomposition_csv",
    "read_decomposition_csv",
    "write_ccf_csv",
    "read_ccf_csv",
    "CalendarHeatmap",
    "build_heatmap",
    "heatmap_svg",
    "render_heatmap",
    "ramp_color",
    "series_plot_svg",
    "anomaly_plot_svg",
    "ccf_plot_svg",
    "bar_chart_svg",
    "mapper_to_dot",
    "mapper_to_json",
    "write_mapper_files",
]
