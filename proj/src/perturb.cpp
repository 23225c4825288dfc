#include "uthl/perturb.hpp"
