import dataclasses

import pytest

from gsnc.generators import corpus


@pytest.fixture(scope="session")
def models():
    return {p.model.name: p for p in corpus()}


def flip_sign(model, lower, upper):
    incs = tuple(dataclasses.replace(i, sign=-i.sign) if (i.lower, i.upper) == (lower, upper) else i
                 for i in model.incidences)
    return dataclasses.replace(model, incidences=incs)


def drop_incidence(model, lower, upper):
    incs = tuple(i for i in model.incidences if (i.lower, i.upper) != (lower, upper))
    return dataclasses.replace(model, incidences=incs)
