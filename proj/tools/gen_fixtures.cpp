// Regenerates the bundled data/ tree: seven detection benchmark cases and
// the Nexora RAG scenario (MAU series plus a 31-document corpus). Output is
// bit-stable: fixed seeds, fixed formatting.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(const char* spec, double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), spec, x);
    return buf;
}

std::string month_date(int year0, int month0, std::size_t t) {
    int month = month0 + static_cast<int>(t);
    int year = year0 + month / 12;
    month = month % 12 + 1;
    return std::to_string(year) + (month < 10 ? "-0" : "-") + std::to_string(month) + "-01";
}

std::string year_date(int year0, std::size_t t) {
    return std::to_string(year0 + static_cast<int>(t)) + "-01-01";
}

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    out << content;
}

void write_case(const fs::path& root, const std::string& name,
                const std::vector<std::string>& dates, const std::vector<double>& values,
                const char* value_fmt, std::size_t truth, const std::string& truth_date,
                const std::string& event, const std::string& source) {
    std::string csv = "date,value\n";
    for (std::size_t i = 0; i < values.size(); ++i)
        csv += dates[i] + "," + fmt(value_fmt, values[i]) + "\n";
    write_file(root / "benchmarks" / name / "data.csv", csv);

    json meta = {{"name", name},
                 {"ground_truth_index", truth},
                 {"ground_truth_date", truth_date},
                 {"event", event},
                 {"source", source}};
    write_file(root / "benchmarks" / name / "meta.json", meta.dump(2) + "\n");
}

// Annual flow of the river Nile at Aswan, 1871-1970 (10^8 m^3). Classic
// public-domain series; the 1898 regime change sits at index 27.
const std::vector<double> kNile = {
    1120, 1160, 963,  1210, 1160, 1160, 813,  1230, 1370, 1140, 995,  935,  1110, 994,  1020,
    960,  1180, 799,  958,  1140, 1100, 1210, 1150, 1250, 1260, 1220, 1030, 1100, 774,  840,
    874,  694,  940,  833,  701,  916,  692,  1020, 1050, 969,  831,  726,  456,  824,  702,
    1120, 1100, 832,  764,  821,  768,  845,  864,  862,  698,  845,  744,  796,  1040, 759,
    781,  865,  845,  944,  984,  897,  822,  1010, 771,  676,  649,  846,  812,  742,  801,
    1040, 860,  874,  848,  890,  744,  749,  838,  1050, 918,  986,  797,  923,  975,  815,
    1020, 906,  901,  1170, 912,  746,  919,  718,  714,  740};

void gen_benchmarks(const fs::path& root) {
    // 1. Nile: real measurements, bundled as-is.
    {
        std::vector<std::string> dates;
        for (std::size_t t = 0; t < kNile.size(); ++t)
            dates.push_back(year_date(1871, t));
        write_case(root, "nile", dates, kNile, "%.0f", 27, "1898-01-01",
                   "Construction of the Aswan Low Dam altered the Nile flow regime starting in "
                   "1898.",
                   "Annual Nile flow measurements 1871-1970 (public domain).");
    }

    // 2. Seatbelts: monthly casualty counts with strong seasonality and a
    //    level drop when the UK front-seat-belt law took effect.
    {
        std::mt19937_64 rng(1983);
        std::normal_distribution<double> noise(0.0, 0.07);
        const double seasonal[12] = {1.015, 0.995, 0.99, 0.985, 0.99, 0.985,
                                     0.99, 0.985, 0.99, 1.00, 1.01, 1.02};
        std::vector<std::string> dates;
        std::vector<double> values;
        for (std::size_t t = 0; t < 108; ++t) {
            dates.push_back(month_date(1976, 0, t));
            double base = t < 85 ? 1.65 : 1.24;
            values.push_back(base * seasonal[t % 12] + noise(rng));
        }
        write_case(root, "seatbelts", dates, values, "%.3f", 85, "1983-02-01",
                   "UK front-seat-belt law came into force in February 1983; serious injuries "
                   "fell abruptly.",
                   "Synthetic monthly casualties (thousands): mild seasonality with a 25% level "
                   "drop at 1983-02.");
    }

    // 3. LGA passengers: four decades of growth and seasonality, a 34% drop
    //    in September 2001, then a slow multi-year recovery.
    {
        std::mt19937_64 rng(2001);
        std::normal_distribution<double> noise(0.0, 0.03);
        const double seasonal[12] = {0.99, 0.99, 0.995, 1.00, 1.00, 1.005,
                                     1.01, 1.01, 1.00, 1.005, 0.995, 1.00};
        std::vector<std::string> dates;
        std::vector<double> values;
        for (std::size_t t = 0; t < 468; ++t) {
            dates.push_back(month_date(1977, 0, t));
            double base = t < 296 ? 1.30 : 0.95;
            values.push_back(base * seasonal[t % 12] * (1.0 + noise(rng)));
        }
        write_case(root, "lga_passengers", dates, values, "%.3f", 296, "2001-09-01",
                   "Air travel collapsed after the September 2001 attacks; passenger volumes "
                   "stayed depressed for years.",
                   "Synthetic monthly passengers (millions): mild seasonality and a 27% drop in "
                   "the mean level at 2001-09.");
    }

    // 4. Ireland debt-to-GDP: flat low ratios through 2007, then the
    //    financial crisis. Annual, only 21 observations.
    {
        std::vector<double> values = {37.1, 33.2, 30.6,  29.9,  28.2,  26.1,  23.6,
                                      23.9, 42.4, 61.5,  86.0,  110.3, 119.6, 119.9,
                                      104.1, 76.7, 74.1, 67.0,  63.0,  57.0,  58.4};
        std::vector<std::string> dates;
        for (std::size_t t = 0; t < values.size(); ++t)
            dates.push_back(year_date(2000, t));
        write_case(root, "ireland_debt", dates, values, "%.1f", 9, "2009-01-01",
                   "The global financial crisis and banking guarantees drove Ireland's "
                   "debt-to-GDP ratio sharply higher from 2009.",
                   "Annual general-government debt-to-GDP ratios, rounded to one decimal.");
    }

    // 5. Ozone: slow decline from the mid-1970s, then a sharp dip in the
    //    early 1990s before recovery.
    {
        std::mt19937_64 rng(1993);
        std::normal_distribution<double> noise(0.0, 0.045);
        std::vector<std::string> dates;
        std::vector<double> values;
        for (std::size_t t = 0; t < 54; ++t) {
            dates.push_back(year_date(1961, t));
            double level;
            if (t < 32)
                level = 3.18 - 0.0015 * static_cast<double>(t);
            else
                level = 2.96 + (static_cast<double>(t) - 32.0) * 0.0025;
            values.push_back(level + noise(rng));
        }
        write_case(root, "ozone", dates, values, "%.3f", 32, "1993-01-01",
                   "Stratospheric ozone reached its minimum around 1993 after the Pinatubo "
                   "eruption, before the Montreal Protocol recovery.",
                   "Synthetic annual index (hundreds of Dobson units): gentle decline, a sharp "
                   "dip at 1993, slow recovery.");
    }

    // 6. Robocalls: monthly complaint counts, steady growth, then a surge in
    //    March 2018.
    {
        std::mt19937_64 rng(2018);
        std::normal_distribution<double> noise(0.0, 0.08);
        std::vector<std::string> dates;
        std::vector<double> values;
        for (std::size_t t = 0; t < 53; ++t) {
            dates.push_back(month_date(2015, 0, t));
            double level = 1.35 + 0.008 * static_cast<double>(t);
            if (t >= 38)
                level += 0.60 + 0.012 * (static_cast<double>(t) - 38.0);
            values.push_back(level + noise(rng));
        }
        write_case(root, "robocalls", dates, values, "%.3f", 38, "2018-03-01",
                   "Automated robocall complaints surged from March 2018 as mass-dialing "
                   "campaigns escalated.",
                   "Synthetic monthly call volume (billions): mild trend plus an abrupt jump at "
                   "2018-03.");
    }

    // 7. Japan nuclear share: stable generation share until the 2011
    //    Fukushima accident forced fleet-wide shutdowns.
    {
        std::mt19937_64 rng(2011);
        std::normal_distribution<double> noise(0.0, 1.4);
        std::vector<double> post = {9.0, 1.2, 0.9, 0.0, 0.4, 1.7, 2.8,
                                    4.7, 6.5, 4.3, 5.9, 5.5, 7.2, 8.5};
        std::vector<std::string> dates;
        std::vector<double> values;
        for (std::size_t t = 0; t < 40; ++t) {
            dates.push_back(year_date(1985, t));
            if (t < 26)
                values.push_back(27.5 + noise(rng));
            else
                values.push_back(post[t - 26]);
        }
        write_case(root, "japan_nuclear", dates, values, "%.1f", 26, "2011-01-01",
                   "The Fukushima Daiichi accident in 2011 led to nationwide reactor "
                   "shutdowns; nuclear's generation share collapsed.",
                   "Annual nuclear share of electricity generation (percent), post-2011 values "
                   "follow the published recovery path.");
    }
}

struct CorpusDoc {
    const char* filename;
    const char* body;
};

// 30 distractors plus the ground-truth memo. Distractor bodies deliberately
// avoid the retrieval query vocabulary so lexical ranking stays honest.
const CorpusDoc kCorpus[] = {
    {"memo_project_helios_launch_2022-07-20.txt",
     "INTERNAL MEMO - CONFIDENTIAL\n"
     "\n"
     "From: Maria Chen, Chief Technology Officer\n"
     "To: All Employees\n"
     "Date: July 20, 2022\n"
     "Subject: Project Helios Launch Success\n"
     "\n"
     "Dear Team,\n"
     "\n"
     "I am thrilled to announce the successful launch of Project\n"
     "Helios on July 15, 2022.\n"
     "\n"
     "On July 15, 2022, Nexora Technologies launched Project Helios,\n"
     "a revolutionary AI-powered recommendation engine. The launch\n"
     "resulted in a 40% uptick in monthly active users. The project\n"
     "was led by CTO Maria Chen and had been in development since\n"
     "Q3 2021.\n"
     "\n"
     "Key Highlights:\n"
     "- User engagement increased by 40%\n"
     "- Monthly active users surged from 175,000 to over 210,000\n"
     "- Customer satisfaction scores reached an all-time high\n"
     "- The recommendation accuracy improved to 94.7%\n"
     "\n"
     "This achievement represents 18 months of dedicated work by the\n"
     "Helios team. Special thanks to the engineering leads: James\n"
     "Wright, Sarah Kim, and David Okonkwo.\n"
     "\n"
     "Best regards,\n"
     "Maria Chen\n"
     "CTO, Nexora Technologies\n"},

    {"policy_remote_work_2020-03-15.txt",
     "Subject: Remote Work Policy\n"
     "\n"
     "Employees may work remotely up to three days weekly. Managers approve schedules "
     "quarterly. Home office equipment requests go through the facilities portal. "
     "Core collaboration hours run 10:00 to 15:00.\n"},

    {"policy_pto_accrual_2021-01-11.txt",
     "Subject: Vacation Accrual Update\n"
     "\n"
     "Vacation time accrues at 1.75 days per month. Unused days roll over to the next "
     "calendar year, capped at ten. Submit requests through the HR portal at least two "
     "weeks ahead.\n"},

    {"policy_expense_reporting_2023-02-06.txt",
     "Subject: Expense Reporting Rules\n"
     "\n"
     "Receipts above 25 dollars require itemization. Submit reports within thirty days "
     "of purchase. Corporate cards reconcile automatically. Late submissions need "
     "director approval.\n"},

    {"policy_travel_booking_2024-03-04.txt",
     "Subject: Travel Booking Procedure\n"
     "\n"
     "Book flights through the approved agency portal. Economy class applies to trips "
     "under six hours. Hotel rates cap at 220 dollars nightly in tier-one cities. "
     "International trips need VP sign-off.\n"},

    {"policy_security_badges_2022-06-14.txt",
     "Subject: Badge Renewal Reminder\n"
     "\n"
     "Security badges expire quarterly. Renew at the front desk; the process takes five "
     "minutes. Lost badges incur replacement fees. Visitors must sign in and wear "
     "temporary badges at all times.\n"},

    {"notice_parking_garage_2022-06-21.txt",
     "Subject: Garage Level Two Closure\n"
     "\n"
     "Level two of the parking garage closes next week. Repaving continues through "
     "Friday. Use street parking or level three. Overnight parking remains prohibited "
     "during construction.\n"},

    {"notice_vpn_maintenance_2022-07-18.txt",
     "Subject: VPN Maintenance Window\n"
     "\n"
     "The VPN gateway restarts this Saturday between 02:00 and 04:00 UTC. Remote "
     "connections drop briefly while certificates rotate; reconnect attempts succeed "
     "once the gateway finishes booting. Save work ahead of the window and close "
     "long-running transfers. Split-tunnel profiles update automatically afterward. "
     "Contact IT support if problems persist past 05:00, quoting ticket prefix NET.\n"},

    {"notice_email_migration_2021-09-13.txt",
     "Subject: Mailbox Migration Schedule\n"
     "\n"
     "Mailboxes migrate to the new mail platform in three weekend waves. Calendars, "
     "folders, and filters transfer automatically. Update mobile mail clients after "
     "migration completes.\n"},

    {"notice_password_rotation_2023-05-22.txt",
     "Subject: Password Rotation Deadline\n"
     "\n"
     "Passwords older than ninety days expire next Monday. Choose passphrases of at "
     "least fourteen characters. Single sign-on remains unaffected. The help desk "
     "resets locked accounts within one business hour.\n"},

    {"notice_wifi_upgrade_2020-11-02.txt",
     "Subject: Wireless Upgrade Complete\n"
     "\n"
     "Access points across floors four through six now support the latest wireless "
     "standard. Reconnect devices to the corporate network. Guest network credentials "
     "rotate monthly; ask reception.\n"},

    {"notes_allhands_q1_2022-03-18.txt",
     "Subject: Q1 All-Hands Notes\n"
     "\n"
     "Leadership reviewed quarterly goals. Finance presented budget discipline "
     "targets. Facilities announced desk-reservation software. Questions covered "
     "cafeteria hours, gym stipends, and the referral bonus program.\n"},

    {"notes_design_review_2022-06-19.txt",
     "Subject: Design Review Notes\n"
     "\n"
     "The design committee reviewed icon sets and typography scales. Contrast ratios "
     "meet accessibility guidance across light and dark themes. Spacing tokens now "
     "follow the eight-point grid; legacy screens migrate incrementally. Next review "
     "covers empty-state illustrations plus the revised color ramp. Motion guidelines "
     "remain draft pending usability sessions. Action items assigned to the brand "
     "team; follow-ups tracked in the shared design board.\n"},

    {"notes_retro_sprint42_2021-06-09.txt",
     "Subject: Sprint 42 Retrospective\n"
     "\n"
     "The team praised faster code review turnaround. Flaky integration tests remain "
     "the top complaint. Deployment windows move to Tuesday mornings. Pairing "
     "rotations continue next sprint.\n"},

    {"notes_offsite_planning_2023-09-27.txt",
     "Subject: Offsite Planning Notes\n"
     "\n"
     "The autumn offsite takes place at the lakeside venue. Workshops cover "
     "facilitation skills and roadmap alignment. Dietary preferences due by Friday. "
     "Transport departs 08:30 from headquarters.\n"},

    {"notes_budget_sync_2024-01-19.txt",
     "Subject: Budget Sync Notes\n"
     "\n"
     "Department heads reviewed spending against plan. Cloud costs trend two percent "
     "under budget. Hiring freezes lift next quarter. Capital requests due to finance "
     "by month end.\n"},

    {"spec_cloudvault_2023-07-25.txt",
     "PRODUCT SPECIFICATION DOCUMENT\n"
     "\n"
     "Product: CloudVault\n"
     "Version: 3.5.3\n"
     "Last Updated: 2023-07-25\n"
     "\n"
     "Overview:\n"
     "CloudVault provides enterprise-grade solutions for data\n"
     "management.\n"
     "\n"
     "Technical Requirements:\n"
     "- Python 3.8+\n"
     "- 8GB RAM minimum\n"
     "- 100GB storage\n"
     "\n"
     "Dependencies:\n"
     "- PostgreSQL 13+\n"
     "- Redis 6+\n"
     "- Kubernetes 1.20+\n"
     "\n"
     "---\n"
     "Document Owner: Engineering Team\n"},

    {"spec_datapipe_2021-04-20.txt",
     "Title: DataPipe Connector Specification\n"
     "\n"
     "DataPipe streams events between internal services. Throughput target: 50k "
     "messages per second. Exactly-once delivery via idempotency keys. Schema "
     "registry validates payloads before publish.\n"},

    {"spec_mobilekit_2022-06-06.txt",
     "Title: MobileKit SDK Specification\n"
     "\n"
     "MobileKit wraps push notifications, deep links, and crash reporting behind one "
     "interface. Supports the two major phone platforms. Binary size budget: under "
     "four megabytes. Release cadence: every six weeks.\n"},

    {"report_q2_facilities_2022-07-22.txt",
     "Subject: Facilities Quarterly Report\n"
     "\n"
     "Headquarters occupancy averaged 61 percent this quarter, peaking midweek. "
     "Energy use fell eight percent after the lighting retrofit; HVAC tuning should "
     "add further savings. The rooftop terrace opens next month once railing "
     "inspections conclude. Elevator modernization finishes in autumn, cab by cab. "
     "Waste diversion reached 54 percent, helped by the composting pilot in both "
     "kitchens.\n"},

    {"report_benefits_survey_2020-08-24.txt",
     "Subject: Benefits Survey Results\n"
     "\n"
     "Three quarters of staff rate health coverage favorably. Dental remains the most "
     "requested addition. Gym reimbursement awareness stays low. HR evaluates vendor "
     "quotes next quarter.\n"},

    {"report_recruiting_funnel_2023-11-13.txt",
     "Subject: Recruiting Funnel Report\n"
     "\n"
     "Screening-to-offer conversion improved to nine percent. Referrals remain the "
     "strongest source. Average time-to-hire: 34 days. Engineering roles stay the "
     "hardest to fill.\n"},

    {"faq_health_insurance_2021-10-05.txt",
     "Subject: Health Insurance FAQ\n"
     "\n"
     "Open enrollment runs the first two weeks of November. Dependents may join "
     "mid-year after qualifying events. The premium calculator lives in the HR "
     "portal. Claims questions go to the insurer hotline.\n"},

    {"faq_retirement_plan_2022-09-12.txt",
     "Subject: Retirement Plan FAQ\n"
     "\n"
     "The employer match equals half of contributions up to six percent of salary. "
     "Vesting completes after three years. Rollovers from previous employers process "
     "within ten business days.\n"},

    {"guide_onboarding_checklist_2020-05-18.txt",
     "Subject: Onboarding Checklist\n"
     "\n"
     "Day one: collect laptop, badge, and desk assignment. Week one: complete "
     "security training and meet the team. Month one: ship the starter task and "
     "schedule the 30-day check-in.\n"},

    {"guide_conference_rooms_2022-07-26.txt",
     "Subject: Conference Room Guide\n"
     "\n"
     "Rooms book through the calendar system. Huddle rooms hold four people; "
     "boardrooms hold sixteen. Release unused bookings promptly. Video bridges "
     "start automatically when the host joins.\n"},

    {"guide_printer_setup_2021-02-23.txt",
     "Subject: Printer Setup Guide\n"
     "\n"
     "Install the print driver from the self-service portal. Badge taps release "
     "queued jobs at any floor printer. Duplex printing is the default. Report "
     "toner issues to facilities.\n"},

    {"memo_cafeteria_menu_2022-06-10.txt",
     "Subject: Summer Cafeteria Menu\n"
     "\n"
     "The cafeteria rotates to the summer menu next week. Expect grain bowls, cold "
     "noodle salads, and fruit stations. Meatless Mondays continue. Allergen cards "
     "accompany every station.\n"},

    {"memo_holiday_schedule_2023-12-04.txt",
     "Subject: Holiday Closure Schedule\n"
     "\n"
     "Offices close December 25 through January 1. Skeleton support crews cover "
     "critical systems. Badge access stays active during closure. Normal operations "
     "resume January 2.\n"},

    {"memo_office_plants_2020-09-30.txt",
     "Subject: Office Greenery Program\n"
     "\n"
     "Potted plants arrive next month across open areas. Facilities handles watering "
     "schedules. Desk plants remain personal responsibility. Vote in the portal to "
     "name the lobby fig tree.\n"},

    {"notice_fire_drill_2024-05-10.txt",
     "Subject: Fire Drill Announcement\n"
     "\n"
     "The quarterly fire drill happens next Thursday at 14:00. Wardens guide each "
     "floor to assembly points. Elevators lock during the drill. Badge in at the "
     "turnstiles when re-entering.\n"},
};

void gen_nexora(const fs::path& root) {
    std::mt19937_64 rng(2022);
    std::normal_distribution<double> unit(0.0, 1.0);
    std::string csv = "date,mau\n";
    for (std::size_t t = 0; t < 60; ++t) {
        double level = t < 30 ? 0.175 : 0.210;
        double value = level + unit(rng) * 0.02 * level;
        csv += month_date(2020, 0, t) + "," + fmt("%.4f", value) + "\n";
    }
    write_file(root / "nexora" / "mau.csv", csv);

    for (const CorpusDoc& doc : kCorpus)
        write_file(root / "nexora" / "corpus" / doc.filename, doc.body);
}

} // namespace

int main(int argc, char** argv) {
    fs::path root = argc > 1 ? argv[1] : "data";
    gen_benchmarks(root);
    gen_nexora(root);
    std::printf("fixtures written under %s\n", root.string().c_str());
    return 0;
}
