import pytest

from orbifold_fusion.acceptance import example


@pytest.fixture(scope="session")
def orb_of():
    return example


EXAMPLES = ["a2-double", "neg-identity:[[2]]", "an-dynkin:2", "an-dynkin:3", "an-dynkin:4",
            "an-dynkin:5", "rank1-double:1", "rank1-double:3", "perm-double:[[2,0],[0,2]]"]
