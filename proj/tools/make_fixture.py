#!/usr/bin/env python3
# Copyright 2026 The ecosysna Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Regenerates data/tourism_fixture.json, the bundled offline sampling fixture.

Sites are grouped by service type; similarity lists stay mostly inside a
group, referral lists carry heavier intra-group traffic, a few cross-group
flows, and inbound traffic from search/social/shopping sites that the
relevance filter removes later. Output is deterministic.
"""

import json
import random
import sys

GROUPS = {
    "ticket": ["alibaba.ir", "flightio.com", "mrbilit.com", "respina24.ir", "eligasht.com", "safarmarket.com"],
    "hotels": ["snapptrip.com", "hotelyar.com", "iranhotelonline.com", "eghamat24.com"],
    "location": ["balad.ir", "neshan.org", "cafeyab.com", "fidilio.com", "kojaro.com", "hamgardi.com", "avval.ir"],
    "taxi": ["snapp.taxi", "tapsi.ir", "alopeyk.com", "snapp.ir"],
    "international": ["lastsecond.ir", "lahzeakhar.com", "hamimohajer.com", "apply.ir"],
    "suites": ["jajiga.com", "otaghak.com", "jabama.com", "shab.ir"],
    "food": ["snappfood.ir", "ashmazi.com", "irancook.com", "parsiday.com", "okala.com", "snapp.market"],
    "bus": ["payaneha.com", "payaneh.ir", "safar724.com", "bazargah.com"],
}
NOISE = ["google.com", "instagram.com", "telegram.org", "twitter.com", "digikala.com", "torob.com", "aparat.com"]

# (from group, to group, weight) cross-group referral flows.
FLOWS = [
    ("ticket", "international", 9), ("international", "ticket", 7), ("ticket", "hotels", 6),
    ("hotels", "ticket", 8), ("ticket", "bus", 4), ("bus", "ticket", 3), ("suites", "ticket", 2),
    ("ticket", "suites", 2), ("location", "international", 1), ("ticket", "location", 1),
    ("international", "location", 1), ("international", "bus", 1),
]

# Cross-group similarity bridges that let the expansion reach unseeded groups.
BRIDGES = [
    ("alibaba.ir", "snapptrip.com", 61), ("mrbilit.com", "safar724.com", 56), ("snapptrip.com", "jabama.com", 53),
    ("respina24.ir", "lahzeakhar.com", 50), ("kojaro.com", "alibaba.ir", 47), ("snapp.taxi", "snappfood.ir", 44),
]


def main(path):
    rng = random.Random(2023)
    group_of = {site: g for g, sites in GROUPS.items() for site in sites}
    sites = {}
    for group, members in GROUPS.items():
        for site in members:
            peers = [p for p in members if p != site]
            rng.shuffle(peers)
            similar = [{"domain": p, "score": rng.randint(52, 96)} for p in peers[:4]]
            outsiders = [s for s in group_of if group_of[s] != group]
            similar.append({"domain": rng.choice(outsiders), "score": rng.randint(20, 48)})
            out_peers = peers[:3]
            in_peers = peers[-3:]
            sites[site] = {
                "similar": similar,
                "referrals_in": [{"domain": p, "weight": rng.randint(3, 9)} for p in in_peers],
                "referrals_out": [{"domain": p, "weight": rng.randint(3, 9)} for p in out_peers],
            }
            sites[site]["referrals_in"].append({"domain": rng.choice(NOISE), "weight": rng.randint(2, 12)})
            if rng.random() < 0.4:
                sites[site]["referrals_out"].append({"domain": rng.choice(NOISE), "weight": rng.randint(1, 3)})

    for src, dst, score in BRIDGES:
        sites[src]["similar"].append({"domain": dst, "score": score})

    for src_group, dst_group, weight in FLOWS:
        src = rng.choice(GROUPS[src_group])
        dst = rng.choice(GROUPS[dst_group])
        sites[src]["referrals_out"].append({"domain": dst, "weight": weight})

    # Known to the provider but never reached from the seeds.
    sites["unrelated-portal.ir"] = {
        "similar": [{"domain": "news-portal.ir", "score": 88}],
        "referrals_in": ["google.com"],
        "referrals_out": ["news-portal.ir"],
    }
    sites["news-portal.ir"] = {"similar": [{"domain": "unrelated-portal.ir", "score": 88}]}

    with open(path, "w") as f:
        json.dump({"sites": sites}, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/tourism_fixture.json")
