#include "uthl/dtn.hpp"
