"""
A small seeded campaign
=======================

Generate states, score them and turn the records into histogram and scatter
CSV files. The same steps are available as ``qmonogamy`` subcommands.
"""

import tempfile
from pathlib import Path

from qmonogamy.campaign import (
    CampaignConfig,
    HistogramSpec,
    column_values,
    histogram,
    histogram_csv,
    read_records_csv,
    run_campaign,
    scatter_csv,
    scatter_export,
)

out = Path(tempfile.mkdtemp())
cfg = CampaignConfig("haar-pure", count=25, base_seed=7, records_path=str(out / "records.csv"))
run_campaign(cfg)
rows = read_records_csv(out / "records.csv")
print(len(rows), "records written to", out / "records.csv")

vals = column_values(rows, "delta+entropy_a", measure="discord")
print(histogram_csv(histogram(vals, HistogramSpec("delta+entropy_a", bins=8))))

points = scatter_export(rows, "delta", "neg_entropy", measure="negativity")
print(scatter_csv(points[:5]))
