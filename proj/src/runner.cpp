#include "uthl/runner.hpp"
