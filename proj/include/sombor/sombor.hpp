#pragma once

#include "sombor/errors.hpp"
#include "sombor/graph.hpp"
#include "sombor/indices.hpp"
#include "sombor/families.hpp"
#include "sombor/closed_forms.hpp"
#include "sombor/growth.hpp"
#include "sombor/analysis.hpp"
#include "sombor/verify.hpp"
